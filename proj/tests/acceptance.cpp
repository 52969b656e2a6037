// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "lgf/lgf.hpp"
#include "oracles.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace lgf;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string &why)
    {
        if (ok)
            detail = why;
        ok = false;
    }
};

fs::path work_dir()
{
    static const fs::path d = [] {
        fs::path p = fs::temp_directory_path() / ("lgforge_accept_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return d;
}

int run_cli(const std::string &args)
{
    const std::string cmd = std::string(LGFORGE_BIN) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &file)
{
    std::ifstream in(file, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome end_to_end()
{
    Outcome o;
    for (long n : {0L, 1L, 2L, 3L, 5L, 12L}) {
        const auto start = std::chrono::steady_clock::now();
        const std::string file = (work_dir() / ("c" + std::to_string(n) + ".json")).string();
        if (int rc = run_cli("forge --n " + std::to_string(n) + " --out " + file); rc != 0) {
            o.fail("forge n=" + std::to_string(n) + " exited " + std::to_string(rc));
            continue;
        }
        if (int rc = run_cli("verify " + file + " --height 10000"); rc != 0)
            o.fail("verify n=" + std::to_string(n) + " exited " + std::to_string(rc));
        auto cert = parse_certificate(slurp(file));
        auto small = rational_point_search(cert.tower, 10000);
        auto large = rational_point_search(cert.tower, 100000);
        if (small.count() != static_cast<std::size_t>(n) || large.count() != static_cast<std::size_t>(n) ||
            !small.anomalies.empty() || !large.anomalies.empty())
            o.fail("n=" + std::to_string(n) + ": search found " + std::to_string(small.count()) + " / " +
                   std::to_string(large.count()));
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > 600)
            o.fail("n=" + std::to_string(n) + " took " + std::to_string(secs) + " s");
    }
    return o;
}

Outcome doubling_law()
{
    Outcome o;
    auto mw = build_seed();
    Tower T(mw.curve);
    const std::vector<std::size_t> expected{8, 16};
    for (std::size_t step = 0; step < 2; ++step) {
        doubling_cover(T, mw.torsion_points);
        auto found = rational_point_search(T, 10000);
        if (found.count() != expected[step] || !found.anomalies.empty())
            o.fail(std::to_string(step + 1) + " doubling(s): " + std::to_string(found.count()) + " points");
    }
    return o;
}

PlaceSet oracle_S(const Rational &a, const Rational &b, std::uint64_t bound)
{
    auto square = [](const Rational &q, const Place &v) {
        return v.is_infinite() ? q > 0 : oracle::brute_force_square_oracle(q, v.prime(), v.prime() == 2 ? 5 : 2);
    };
    std::vector<Place> out;
    std::vector<Place> places{Place::infinity()};
    for (auto p : primes_up_to(bound))
        places.push_back(Place::finite(p));
    for (const auto &v : places)
        if (!square(a, v) && !square(b, v) && !square(a * b, v))
            out.push_back(v);
    return PlaceSet(out);
}

Outcome square_classes()
{
    Outcome o;
    const PlaceSet s35{Place::finite(2), Place::finite(3), Place::finite(5)}, s12{Place::finite(2)};
    if (!(compute_S(3, 5) == s35) || !(oracle_S(3, 5, 1000) == s35))
        o.fail("S(3,5)");
    if (!(compute_S(-1, 2) == s12) || !(oracle_S(-1, 2, 1000) == s12))
        o.fail("S(-1,2)");
    std::mt19937_64 rng(2024);
    const auto primes = primes_up_to(100);
    int failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Place> pool{Place::infinity()};
        for (auto p : primes)
            pool.push_back(Place::finite(p));
        std::shuffle(pool.begin(), pool.end(), rng);
        PlaceSet S(std::vector<Place>(pool.begin(), pool.begin() + static_cast<long>(rng() % 7)));
        Place w = Place::finite(primes[rng() % primes.size()]);
        while (S.contains(w))
            w = Place::finite(next_prime(w.prime()));
        if (!weak_approximation_holds(weak_approximation_c(S, w), S, w))
            ++failures;
    }
    if (failures)
        o.fail(std::to_string(failures) + " weak approximation failures");
    return o;
}

Outcome local_squares()
{
    Outcome o;
    std::size_t disagreements = 0, compared = 0;
    for (std::uint64_t p : primes_up_to(49)) {
        const unsigned precision = p == 2 ? 6 : p < 10 ? 3 : 2;
        for (long n = -199; n <= 199; ++n)
            for (long d = 1; d < 200 && n != 0; ++d) {
                if (std::gcd(n, d) != 1)
                    continue;
                Rational q(n, d);
                ++compared;
                if (is_local_square(q, Place::finite(p)) != oracle::brute_force_square_oracle(q, p, precision))
                    ++disagreements;
            }
    }
    if (disagreements)
        o.fail(std::to_string(disagreements) + " of " + std::to_string(compared) + " disagree");
    o.detail = o.ok ? std::to_string(compared) + " values compared" : o.detail;
    return o;
}

Outcome seed_certification()
{
    Outcome o;
    for (long b : {-1L, -4L}) {
        WeierstrassCurve E(0, b);
        auto mw = selmer_rank_bound(E);
        auto T = nagell_lutz_torsion(E);
        if (mw.rank_upper_bound != 0 || T.size() != 4)
            o.fail("b=" + std::to_string(b) + ": rank bound " + std::to_string(mw.rank_upper_bound));
        // |x| ≤ 100 with denominators d² ≤ 100
        std::set<CurvePoint> torsion(T.begin(), T.end());
        for (const auto &P : base_point_search(E, 100))
            if (!torsion.count(P))
                o.fail("extra point " + to_string(P));
        for (long x = -100; x <= 100; ++x) {
            Rational v = E.rhs(x);
            if (is_rational_square(v) && !torsion.count(CurvePoint::affine(x, rational_sqrt(v))))
                o.fail("extra integral point at x = " + std::to_string(x));
        }
    }
    return o;
}

Outcome riemann_roch()
{
    Outcome o;
    const WeierstrassCurve E(0, -1);
    Tower T(E);
    const QuadraticPoint P1 = find_closed_point(E), P2 = find_closed_point(E, {P1.x0});
    std::size_t divisors = 0;
    for (long m1 = -3; m1 <= 6; ++m1)
        for (long m2 = -3; m2 <= 6; ++m2)
            for (long r = -6; r <= 12; ++r) {
                Divisor D;
                D.add(P1, m1).add(P2, m2).add_infinity(r);
                if (D.degree() < 1 || D.degree() > 12)
                    continue;
                ++divisors;
                auto basis = T.rr_space(D);
                Matrix M;
                for (const auto &f : basis) {
                    Poly k = divmod(Poly::linear(P1.x0).pow(static_cast<unsigned>(std::max(m1, 0L))) *
                                        Poly::linear(P2.x0).pow(static_cast<unsigned>(std::max(m2, 0L))),
                                    f.d())
                                 .first;
                    Row row;
                    for (std::size_t i = 0; i < 16; ++i)
                        row.push_back((f.p() * k).coeff(i));
                    for (std::size_t i = 0; i < 16; ++i)
                        row.push_back((f.q() * k).coeff(i));
                    M.push_back(row);
                }
                if (static_cast<long>(basis.size()) != D.degree() || rank(M) != basis.size())
                    o.fail("dim L(D) = " + std::to_string(basis.size()) + " for degree " +
                           std::to_string(D.degree()));
            }
    // eigenspaces of the tower
    for (long n : {1L, 5L}) {
        auto cert = forge(n);
        const Tower &U = cert.tower;
        Divisor D0;
        D0.add(U.covers().front().P, 3);
        for (std::size_t level = 1; level < U.level(); ++level) {
            std::size_t expected = 0;
            for (std::size_t S = 0; S < (std::size_t{1} << level); ++S) {
                Divisor D = D0;
                for (std::size_t j = 0; j < level; ++j)
                    if (S >> j & 1)
                        D = D + U.half_floor_divisor(U.covers()[j]);
                expected += U.rr_space(D).size();
            }
            if (U.rr_space_tower(level, D0).size() != expected)
                o.fail("tower dimension mismatch at level " + std::to_string(level));
        }
    }
    if (o.ok)
        o.detail = std::to_string(divisors) + " divisors";
    return o;
}

Outcome lind_reichardt()
{
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    auto r = lind_reichardt_check(100000, 1000);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!r.locally_soluble())
        o.fail("local solubility not certified");
    if (!r.rational_points.empty())
        o.fail("found " + r.rational_points.front());
    if (secs > 300)
        o.fail("took " + std::to_string(secs) + " s");
    if (o.ok)
        o.detail = std::to_string(r.local.size()) + " places, " + std::to_string(secs).substr(0, 5) + " s";
    return o;
}

Outcome tamper_suite()
{
    Outcome o;
    const auto cert = forge(3);
    const Json base = to_json(cert);
    std::vector<std::pair<std::string, Json>> mutated;
    auto mutate = [&](const std::string &name, const std::function<void(Json &)> &fn) {
        Json j = base;
        fn(j);
        mutated.emplace_back(name, j);
    };
    mutate("wrong c", [](Json &j) { j["square_data"]["c"] = "7"; });
    mutate("shrunken S", [](Json &j) { j["square_data"]["S"] = Json::array({"2", "5"}); });
    mutate("w inside S", [](Json &j) { j["square_data"]["w"] = "3"; });
    {
        ConstructionCertificate c = cert;
        Tower T = c.tower.truncated(c.tower.level() - 1);
        const Cover &fin = c.tower.covers().back();
        T.push_cover(Cover{T.mul(fin.f, fin.f), fin.P, fin.pole_order, CoverRole::final_cover});
        c.tower = T;
        mutated.emplace_back("non-simple zero", to_json(c));
    }
    mutate("wrong f-value", [](Json &j) {
        auto &p = j["covers"][1]["f"]["g"]["p"];
        p[0] = to_string(parse_rational(p[0].get<std::string>()) + 1);
    });
    mutate("inflated point list", [](Json &j) {
        Json extra = j["designated_points"][0];
        extra["point"]["u"][0] = "12345";
        j["designated_points"].push_back(extra);
    });
    mutate("inflated n", [](Json &j) { j["n"] = 4; });
    mutate("wrong designated value", [](Json &j) { j["designated_points"][5]["value"] = "7"; });
    mutate("wrong doubling cover", [](Json &j) {
        auto &p = j["covers"][0]["f"]["p"];
        p[0] = to_string(parse_rational(p[0].get<std::string>()) + 1);
    });
    mutate("wrong torsion list", [](Json &j) { j["mw"]["torsion_points"].erase(0); });
    mutate("wrong rank bound", [](Json &j) { j["mw"]["rank_upper_bound"] = 1; });
    mutate("wrong seed", [](Json &j) { j["seed"]["b"] = "-2"; });
    mutate("wrong pole point", [](Json &j) { j["covers"][1]["P"]["x0"] = "7"; });
    mutate("wrong audit value", [](Json &j) { j["audit"][0]["value"] = "5"; });

    std::size_t caught = 0;
    for (const auto &[name, j] : mutated) {
        bool lib_rejects = false;
        try {
            lib_rejects = !check_certificate(certificate_from_json(j)).passed();
        } catch (const FormatError &) {
            lib_rejects = false; // must be a mathematical rejection, not a parse failure
        }
        const std::string file = (work_dir() / "tampered.json").string();
        std::ofstream(file, std::ios::binary) << j.dump(2);
        const int rc = run_cli("verify " + file + " --height 1000");
        if (lib_rejects && rc == 1)
            ++caught;
        else
            o.fail(name + " not caught (exit " + std::to_string(rc) + ")");
    }
    if (o.ok)
        o.detail = std::to_string(caught) + " of " + std::to_string(mutated.size()) + " mutations caught";
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"end-to-end forge/verify for n in {0,1,2,3,5,12}", end_to_end},
        {"doubling law 4 -> 8 -> 16", doubling_law},
        {"square classes, S and weak approximation", square_classes},
        {"local squares against the brute-force oracle", local_squares},
        {"seed certification", seed_certification},
        {"Riemann-Roch dimensions", riemann_roch},
        {"Lind-Reichardt regression", lind_reichardt},
        {"tamper suite", tamper_suite},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first
                  << (o.detail.empty() ? "" : " (" + o.detail + ")") << std::endl;
        failed += !o.ok;
    }
    fs::remove_all(work_dir());
    return failed == 0 ? 0 : 1;
}
