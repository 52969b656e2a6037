#ifndef LGF_VERIFY_HPP
#define LGF_VERIFY_HPP

#include "lgf/certificate.hpp"
#include "lgf/search.hpp"

#include <functional>

namespace lgf {

struct CheckOutcome {
    std::string check;
    bool ok = true;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckOutcome> checks;

    bool passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome &c) { return c.ok; });
    }
    std::vector<CheckOutcome> mismatches() const
    {
        std::vector<CheckOutcome> out;
        std::copy_if(checks.begin(), checks.end(), std::back_inserter(out), [](const auto &c) { return !c.ok; });
        return out;
    }
    void add(std::string check, bool ok, std::string detail = {})
    {
        checks.push_back({std::move(check), ok, std::move(detail)});
    }
    Json to_json() const
    {
        Json a = Json::array();
        for (const auto &c : checks)
            a.push_back(Json{{"check", c.check}, {"ok", c.ok}, {"detail", c.detail}});
        return a;
    }
};

namespace detail {

inline std::string places_string(const PlaceSet &S)
{
    std::string s;
    for (const auto &v : S)
        s += (s.empty() ? "" : ",") + to_string(v);
    return "{" + s + "}";
}

// runs fn, turning exceptions into a failed check
inline void guarded(VerificationReport &r, const std::string &check, const std::function<void()> &fn)
{
    try {
        fn();
    } catch (const std::exception &e) {
        r.add(check, false, std::string("exception: ") + e.what());
    }
}

inline std::vector<std::string> extra_poles(const Tower &T, const Cover &c)
{
    std::vector<std::string> out;
    const Poly allowed = Poly::linear(c.P.x0);
    for (std::size_t S = 0; S < c.f.comps.size(); ++S) {
        const BaseFunction &b = c.f.comps[S];
        if (b.is_zero())
            continue;
        Poly d = b.d();
        while (d.degree() > 0 && d(c.P.x0) == 0)
            d = d / allowed;
        if (d.degree() > 0)
            out.push_back("component " + std::to_string(S) + " has poles at the roots of a degree-" +
                          std::to_string(d.degree()) + " factor");
        if (ord_infinity_numerator(b.p(), b.q()) + 2 * b.d().degree() < 0)
            out.push_back("component " + std::to_string(S) + " has a pole at infinity");
    }
    (void)T;
    return out;
}

} // namespace detail

// Recomputes every condition of the construction from the certificate's
// data alone. The audit is compared against recomputed values, never trusted.
inline VerificationReport check_certificate(const ConstructionCertificate &cert)
{
    VerificationReport R;
    const Tower &T = cert.tower;
    const WeierstrassCurve &E = T.curve();

    if (cert.n < 0)
        R.add("n is nonnegative", false, std::to_string(cert.n));

    // ---- seed: rank 0 and complete torsion ----
    MordellWeilCertificate mw;
    bool seed_ok = false;
    detail::guarded(R, "seed descent", [&] {
        if (!E.integral()) {
            R.add("seed has integral coefficients", false);
            return;
        }
        mw = selmer_rank_bound(E);
        seed_ok = true;
        R.add("seed rank bound is 0", mw.rank_upper_bound == 0, "recomputed " + std::to_string(mw.rank_upper_bound));
        R.add("recorded rank bound matches", cert.mw.rank_upper_bound == mw.rank_upper_bound,
              "recorded " + std::to_string(cert.mw.rank_upper_bound));
        R.add("recorded Selmer dimensions match", cert.mw.selmer_dimension == mw.selmer_dimension);
        R.add("recorded torsor local data matches", cert.mw.selmer_local_data == mw.selmer_local_data);
        R.add("recorded torsion points match Nagell-Lutz", cert.mw.torsion_points == mw.torsion_points,
              std::to_string(cert.mw.torsion_points.size()) + " recorded, " +
                  std::to_string(mw.torsion_points.size()) + " recomputed");
    });
    if (!seed_ok)
        return R;
    const std::vector<CurvePoint> &base = mw.torsion_points;

    // ---- square classes ----
    const SquareClassData &sq = cert.square_data;
    detail::guarded(R, "square data", [&] {
        auto bad = square_data_violations(sq);
        R.add("square class data", bad.empty(), bad.empty() ? "" : bad.front());
        for (std::size_t i = 1; i < bad.size(); ++i)
            R.add("square class data", false, bad[i]);
    });

    // ---- tower shape ----
    const auto &covers = T.covers();
    if (covers.empty() || covers.back().role != CoverRole::final_cover) {
        R.add("tower ends in a final cover", false);
        return R;
    }
    for (std::size_t j = 0; j + 1 < covers.size(); ++j)
        if (covers[j].role != CoverRole::doubling)
            R.add("intermediate covers are doubling covers", false, "cover " + std::to_string(j + 1));
    const std::size_t L = covers.size() - 1;

    // ---- doubling covers ----
    for (std::size_t j = 0; j < L; ++j) {
        const Cover &c = covers[j];
        const std::string name = "cover " + std::to_string(j + 1);
        detail::guarded(R, name, [&] {
            if (!c.f.is_base()) {
                R.add(name + " is pulled back from the base", false);
                return;
            }
            T.check_quadratic(c.P);
            const BaseFunction &f = c.f.comps[0];
            const long o = T.order_at(f, c.P);
            R.add(name + " pole order at P is odd", o < 0 && (-o) % 2 == 1, "order " + std::to_string(o));
            R.add(name + " pole order matches", -o == c.pole_order, "recorded " + std::to_string(c.pole_order));
            auto why = T.simple_zero_violation(f);
            R.add(name + " zeros are simple", why.empty(), why);
            auto extra = detail::extra_poles(T, c);
            R.add(name + " has poles only above P", extra.empty(), extra.empty() ? "" : extra.front());
            for (std::size_t i = 0; i < j; ++i)
                R.add(name + " support disjoint from cover " + std::to_string(i + 1), T.supports_disjoint(covers[i], c));
            for (const auto &z : base) {
                Rational v = T.evaluate(f, z);
                R.add(name + " equals 1 at " + to_string(z), v == 1, "value " + to_string(v));
            }
        });
    }

    // ---- certified point lists ----
    ClimbResult lower;
    detail::guarded(R, "point lists", [&] {
        lower = climb_points(T, base, L);
        R.add("climb below the final cover is unambiguous", lower.anomalies.empty(),
              lower.anomalies.empty() ? "" : lower.anomalies.front());
        for (std::size_t l = 0; l <= L; ++l)
            R.add("level " + std::to_string(l) + " point count doubles", lower.level_counts[l] == base.size() << l,
                  std::to_string(lower.level_counts[l]) + " points");
    });

    // ---- final cover ----
    const Cover &fc = covers.back();
    detail::guarded(R, "final cover", [&] {
        T.check_quadratic(fc.P);
        bool fresh = true;
        for (std::size_t j = 0; j < L; ++j) {
            const BaseFunction &fj = covers[j].f.comps[0];
            fresh = fresh && covers[j].P.x0 != fc.P.x0 && fj.d()(fc.P.x0) != 0 && T.norm_numerator(fj)(fc.P.x0) != 0;
        }
        R.add("final cover point is fresh", fresh);
        if (!fresh)
            return;
        const long o = T.order_at(fc.f, LiftedPoint{fc.P, L});
        R.add("final cover pole order at P is odd", o < 0 && (-o) % 2 == 1, "order " + std::to_string(o));
        R.add("final cover pole order matches", -o == fc.pole_order, "recorded " + std::to_string(fc.pole_order));
    });

    detail::guarded(R, "designated points", [&] {
        const auto n = static_cast<std::size_t>(std::max<long>(cert.n, 0));
        std::vector<TowerPoint> listed;
        for (const auto &d : cert.designated)
            listed.push_back(d.point);
        R.add("designated points are the certified rational points, in order", listed == lower.points,
              std::to_string(listed.size()) + " listed, " + std::to_string(lower.points.size()) + " certified");
        R.add("at least n + 4 designated points", listed.size() >= n + 4);
        static const char *named[] = {"a", "b", "ab"};
        for (std::size_t i = 0; i < cert.designated.size(); ++i) {
            const DesignatedPoint &d = cert.designated[i];
            const std::string where = "y" + std::to_string(i + 1) + " = " + to_string(d.point);
            std::string role = i < n ? "zero" : i - n < 3 ? named[i - n] : "c";
            Rational target = role == "zero" ? Rational(0)
                              : role == "a"  ? sq.a
                              : role == "b"  ? sq.b
                              : role == "ab" ? Rational(sq.a * sq.b)
                                             : sq.c;
            R.add("role of " + where, d.role == role, "recorded " + d.role + ", expected " + role);
            R.add("recorded value at " + where, d.value == target, to_string(d.value));
            Rational v = T.evaluate(fc.f, d.point);
            R.add("final cover value at " + where, v == target, "value " + to_string(v));
            if (role == "zero") {
                long o = T.order_at(fc.f, d.point);
                R.add("simple zero at " + where, o == 1, "order " + std::to_string(o));
            }
        }
    });

    detail::guarded(R, "final count", [&] {
        auto extra = detail::extra_poles(T, fc);
        R.add("final cover has poles only above P", extra.empty(), extra.empty() ? "" : extra.front());
        ClimbResult top = climb_points(T, base, covers.size());
        R.add("top level climb is unambiguous", top.anomalies.empty(),
              top.anomalies.empty() ? "" : top.anomalies.front());
        R.add("top level has exactly n rational points", static_cast<long>(top.count()) == cert.n,
              std::to_string(top.count()) + " points");
    });

    // ---- audit ----
    std::map<std::string, TowerPoint> named_points;
    for (const auto &d : cert.designated)
        named_points.emplace(to_string(d.point), d.point);
    std::optional<ClimbResult> full;
    for (const auto &e : cert.audit) {
        const std::string label = "audit " + e.check + " [" + e.subject + "]";
        detail::guarded(R, label, [&] {
            std::optional<std::string> v;
            auto cover_of = [&](const std::string &subject) -> const Cover * {
                if (subject.starts_with("final cover"))
                    return &fc;
                if (subject.starts_with("cover ")) {
                    std::size_t j = std::stoul(subject.substr(6));
                    if (j >= 1 && j <= L)
                        return &covers[j - 1];
                }
                return nullptr;
            };
            auto at = [](const std::string &subject) {
                auto k = subject.find(" @ ");
                return k == std::string::npos ? std::string() : subject.substr(k + 3);
            };
            if (e.check == "selmer_dimension" && (e.subject == "phi" || e.subject == "phi_hat")) {
                v = std::to_string(mw.selmer_dimension[e.subject == "phi" ? 0 : 1]);
            } else if (e.check == "rank_upper_bound") {
                v = std::to_string(mw.rank_upper_bound);
            } else if (e.check == "torsion_count") {
                v = std::to_string(mw.torsion_points.size());
            } else if (e.check == "S") {
                v = detail::places_string(compute_S(sq.a, sq.b));
            } else if (e.check == "valuation_at_w") {
                v = std::to_string(valuation(sq.c, sq.w));
            } else if (e.check == "local_square") {
                v = is_local_square(sq.c, parse_place(at(e.subject))) ? "true" : "false";
            } else if (e.check == "point_count" && e.subject.starts_with("level ")) {
                if (!full)
                    full = climb_points(T, base, covers.size());
                std::size_t l = std::stoul(e.subject.substr(6));
                if (l < full->level_counts.size())
                    v = std::to_string(full->level_counts[l]);
            } else if (e.check == "pole_order") {
                if (const Cover *c = cover_of(e.subject))
                    v = std::to_string(c == &fc ? -T.order_at(c->f, LiftedPoint{c->P, L})
                                                : -T.order_at(c->f.comps[0], c->P));
            } else if (e.check == "rr_dimension") {
                if (const Cover *c = cover_of(e.subject)) {
                    std::size_t dim = 0;
                    if (c != &fc) {
                        dim = T.rr_space(Divisor().add(c->P, c->pole_order)).size();
                    } else {
                        for (std::size_t S = 0; S < (std::size_t{1} << L); ++S) {
                            Divisor D;
                            D.add(c->P, S == 0 ? c->pole_order : c->pole_order - 1);
                            for (std::size_t j = 0; j < L; ++j)
                                if (S >> j & 1)
                                    D.add(covers[j].P, -((covers[j].pole_order + 1) / 2));
                            dim += T.rr_space(D).size();
                        }
                    }
                    v = std::to_string(dim);
                }
            } else if (e.check == "value" || e.check == "zero_order") {
                const Cover *c = cover_of(e.subject);
                const std::string pt = at(e.subject);
                if (c && c != &fc) {
                    for (const auto &z : base)
                        if (to_string(z) == pt && e.check == "value")
                            v = to_string(T.evaluate(c->f.comps[0], z));
                } else if (c && named_points.count(pt)) {
                    const TowerPoint &P = named_points.at(pt);
                    v = e.check == "value" ? to_string(T.evaluate(c->f, P)) : std::to_string(T.order_at(c->f, P));
                }
            } else if (e.check == "extra_poles") {
                auto extra = detail::extra_poles(T, fc);
                v = extra.empty() ? "none" : extra.front();
            }
            if (!v)
                R.add(label, false, "unknown audit entry");
            else
                R.add(label, *v == e.value, "recorded " + e.value + ", recomputed " + *v);
        });
    }
    return R;
}

// ---------------------------------------------------------------------------

struct LocalSolvabilityReport {
    std::vector<std::pair<Place, bool>> spot_checks; // enumeration up to the bound plus S
    std::vector<std::string> failures;
    bool global_argument = false; // coverage at every place, via S

    bool passed() const { return global_argument && failures.empty(); }
};

// At each place some designated value among a, b, ab, c (recomputed as the
// final cover's value at its point) must be a local square: the two points of
// X above that point are then Q_v-points. Places outside S are covered by the
// definition of S, places in S by c.
inline LocalSolvabilityReport local_solvability_report(const ConstructionCertificate &cert, std::uint64_t B)
{
    LocalSolvabilityReport R;
    const Tower &T = cert.tower;
    const SquareClassData &sq = cert.square_data;
    std::vector<Rational> values;
    try {
        for (const auto &d : cert.designated)
            if (d.role != "zero")
                values.push_back(T.evaluate(T.covers().back().f, d.point));
    } catch (const std::exception &e) {
        R.failures.push_back(std::string("cannot evaluate designated values: ") + e.what());
        return R;
    }
    std::vector<Place> places{Place::infinity()};
    for (auto p : primes_up_to(B))
        places.push_back(Place::finite(p));
    for (const auto &v : sq.S)
        places.push_back(v);
    PlaceSet all(places);
    for (const auto &v : all) {
        bool ok = std::any_of(values.begin(), values.end(),
                              [&](const Rational &x) { return x != 0 && is_local_square(x, v); });
        R.spot_checks.emplace_back(v, ok);
        if (!ok)
            R.failures.push_back("no designated value is a square at " + to_string(v));
    }
    // global argument
    try {
        bool has[4] = {false, false, false, false};
        for (const auto &x : values) {
            has[0] = has[0] || x == sq.a;
            has[1] = has[1] || x == sq.b;
            has[2] = has[2] || x == sq.a * sq.b;
            has[3] = has[3] || x == sq.c;
        }
        const PlaceSet S = compute_S(sq.a, sq.b);
        bool ok = has[0] && has[1] && has[2] && has[3];
        if (!ok)
            R.failures.push_back("designated values do not include all of a, b, ab, c");
        if (!(S == sq.S))
            R.failures.push_back("recorded S differs from " + detail::places_string(S));
        for (const auto &v : S)
            if (!is_local_square(sq.c, v)) {
                ok = false;
                R.failures.push_back("c is not a square at " + to_string(v) + " in S");
            }
        R.global_argument = ok;
    } catch (const std::exception &e) {
        R.failures.push_back(e.what());
    }
    return R;
}

// ---------------------------------------------------------------------------
// 2y² = 1 − 17x⁴. Homogenised with Y = 2y: Y² = 2z⁴ − 34x⁴.

struct LindReichardtReport {
    long height = 0;
    std::uint64_t prime_bound = 0;
    std::vector<std::pair<Place, bool>> local;   // p-adic class refinement, and ∞
    std::vector<std::uint64_t> count_route_failed; // good primes without a smooth F_p point
    std::vector<std::string> rational_points;

    bool locally_soluble() const
    {
        return std::all_of(local.begin(), local.end(), [](const auto &x) { return x.second; }) &&
               count_route_failed.empty();
    }
    bool passed() const { return locally_soluble() && rational_points.empty(); }
};

inline BinaryQuartic lind_reichardt_quartic()
{
    BinaryQuartic g;
    g.c = {Integer(2), Integer(0), Integer(0), Integer(0), Integer(-34)};
    return g;
}

// A smooth F_p point of Y² = 2z⁴ − 34x⁴ (Y ≠ 0, in either chart x = 1 or
// z = 1) lifts to Q_p by Hensel.
inline bool lind_reichardt_fp_point(std::uint64_t p)
{
    auto smooth_square = [p](std::uint64_t lead, std::uint64_t t, std::uint64_t other) {
        const std::uint64_t t4 = detail::mulmod(detail::mulmod(t, t, p), detail::mulmod(t, t, p), p);
        const std::uint64_t v = (lead % p + p - detail::mulmod(other % p, t4, p)) % p;
        return v != 0 && detail::powmod(v, (p - 1) / 2, p) == 1;
    };
    for (std::uint64_t t = 0; t < p; ++t) {
        // z = 1: Y² = 2 − 34x⁴;  x = 1: Y² = −34 + 2z⁴ = −(34 − 2z⁴)
        if (smooth_square(2, t, 34))
            return true;
        const std::uint64_t z4 = detail::mulmod(detail::mulmod(t, t, p), detail::mulmod(t, t, p), p);
        const std::uint64_t v = (detail::mulmod(2, z4, p) + p - 34 % p) % p;
        if (v != 0 && detail::powmod(v, (p - 1) / 2, p) == 1)
            return true;
    }
    return false;
}

namespace detail {

// T[q mod M][p mod M]: 2(q⁴ − 17p⁴) is a square modulo every prime factor of M
struct LrSieve {
    std::uint32_t M;
    std::vector<bool> ok;
    explicit LrSieve(std::vector<std::uint32_t> primes)
    {
        M = 1;
        for (auto m : primes)
            M *= m;
        ok.assign(static_cast<std::size_t>(M) * M, true);
        for (auto m : primes) {
            std::vector<bool> sq(m, false);
            for (std::uint32_t i = 0; i < m; ++i)
                sq[i * i % m] = true;
            std::vector<bool> pair(m * m);
            for (std::uint32_t q = 0; q < m; ++q)
                for (std::uint32_t p = 0; p < m; ++p) {
                    std::uint64_t q4 = std::uint64_t(q) * q % m * q % m * q % m;
                    std::uint64_t p4 = std::uint64_t(p) * p % m * p % m * p % m;
                    pair[q * m + p] = sq[2 * ((q4 + 17ull * m - 17 * p4 % m) % m) % m];
                }
            for (std::uint32_t q = 0; q < M; ++q)
                for (std::uint32_t p = 0; p < M; ++p)
                    if (!pair[(q % m) * m + p % m])
                        ok[static_cast<std::size_t>(q) * M + p] = false;
        }
    }
};

} // namespace detail

// Points x = ±p/q with max(p, q) ≤ H. p and q must both be odd: otherwise
// q⁴ − 17p⁴ is odd and cannot be twice a square.
inline std::vector<std::string> lind_reichardt_search(long H)
{
    static const detail::LrSieve s1({5, 7, 9, 11}), s2({13, 19, 23});
    std::vector<std::string> found;
    const long M1 = s1.M, M2 = s2.M;
    for (long q = 1; q <= H; q += 2) {
        const __int128 q4 = static_cast<__int128>(q) * q * q * q;
        const std::size_t row1 = static_cast<std::size_t>(q % s1.M) * s1.M;
        const std::size_t row2 = static_cast<std::size_t>(q % s2.M) * s2.M;
        long r1 = 1, r2 = 1;
        for (long p = 1; p <= H; p += 2, r1 = r1 + 2 >= M1 ? r1 + 2 - M1 : r1 + 2, r2 = r2 + 2 >= M2 ? r2 + 2 - M2 : r2 + 2) {
            const __int128 p4 = static_cast<__int128>(p) * p * p * p;
            if (17 * p4 >= q4)
                break;
            if (!s1.ok[row1 + static_cast<std::size_t>(r1)] || !s2.ok[row2 + static_cast<std::size_t>(r2)])
                continue;
            const __int128 V = 2 * (q4 - 17 * p4);
            unsigned __int128 root;
            if (!detail::isqrt_u128(static_cast<unsigned __int128>(V), root) || std::gcd(p, q) != 1)
                continue;
            found.push_back("x = +-" + std::to_string(p) + "/" + std::to_string(q));
        }
    }
    return found;
}

inline LindReichardtReport lind_reichardt_check(long H, std::uint64_t B)
{
    LindReichardtReport R;
    R.height = H;
    R.prime_bound = B;
    const BinaryQuartic g = lind_reichardt_quartic();
    R.local.emplace_back(Place::infinity(), real_soluble(g));
    for (auto p : primes_up_to(B)) {
        R.local.emplace_back(Place::finite(p), qp_soluble(g, p));
        if (p != 2 && p != 17 && !lind_reichardt_fp_point(p))
            R.count_route_failed.push_back(p);
    }
    R.rational_points = lind_reichardt_search(H);
    return R;
}

} // namespace lgf

#endif // LGF_VERIFY_HPP
