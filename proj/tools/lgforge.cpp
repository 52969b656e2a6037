// lgforge command-line entry point.

#include "lgf/lgf.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::pair<lgf::Rational, lgf::Rational> parse_pair(const std::string &text, const char *flag)
{
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw UsageError(std::string(flag) + " expects two rationals separated by a comma");
    try {
        return {lgf::parse_rational(text.substr(0, comma)), lgf::parse_rational(text.substr(comma + 1))};
    } catch (const lgf::ArithmeticError &e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw lgf::FormatError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string places(const lgf::PlaceSet &S)
{
    std::string s;
    for (const auto &v : S)
        s += (s.empty() ? "" : ", ") + lgf::to_string(v);
    return "{" + s + "}";
}

int cmd_forge(long n, const std::string &seed, const std::string &classes, const std::string &out)
{
    if (n < 0)
        throw UsageError("--n must be a nonnegative integer");
    lgf::ForgeOptions opt;
    if (!seed.empty())
        std::tie(opt.seed_a, opt.seed_b) = parse_pair(seed, "--seed");
    if (!classes.empty())
        std::tie(opt.class_a, opt.class_b) = parse_pair(classes, "--classes");

    lgf::ConstructionCertificate cert;
    try {
        cert = lgf::forge(n, opt);
    } catch (const std::exception &e) {
        std::cerr << "forge rejected: " << e.what() << "\n";
        return kExitUsage;
    }
    const std::string text = lgf::to_json(cert).dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!(f << text)) {
            std::cerr << "cannot write " << out << "\n";
            return kExitUsage;
        }
    }
    const auto &sq = cert.square_data;
    std::ostream &log = std::cerr;
    log << "n = " << n << ", seed y^2 = x^3 + " << lgf::to_string(cert.tower.curve().a) << " x^2 + "
        << lgf::to_string(cert.tower.curve().b) << " x (" << cert.mw.torsion_points.size() << " rational points)\n";
    log << "levels: " << cert.tower.level() - 1 << " doubling + 1 final; points per level:";
    for (const auto &e : cert.audit)
        if (e.check == "point_count")
            log << " " << e.value;
    log << "\n";
    log << "S = " << places(sq.S) << ", w = " << lgf::to_string(sq.w) << ", c = " << lgf::to_string(sq.c) << "\n";
    if (!out.empty())
        log << "wrote " << out << "\n";
    return kExitOk;
}

int cmd_verify(const std::string &path, long height, long places_bound, bool lind_reichardt)
{
    if (height < 1 || places_bound < 2)
        throw UsageError("--height must be >= 1 and --places-bound >= 2");
    lgf::ConstructionCertificate cert;
    try {
        cert = lgf::parse_certificate(read_file(path));
    } catch (const lgf::FormatError &e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kExitUsage;
    }

    lgf::Json report;
    lgf::VerificationReport checks = lgf::check_certificate(cert);
    report["certificate_checks"] = checks.to_json();

    auto local = lgf::local_solvability_report(cert, static_cast<std::uint64_t>(places_bound));
    report["local_solvability"] = {{"all_places_certified", local.passed()},
                                   {"spot_checked_places", local.spot_checks.size()},
                                   {"failures", local.failures}};

    bool search_ok = false;
    try {
        auto found = lgf::rational_point_search(cert.tower, height);
        lgf::Json pts = lgf::Json::array();
        for (const auto &P : found.points)
            pts.push_back(lgf::to_string(P));
        for (const auto &s : found.pole_points)
            pts.push_back(s);
        search_ok = static_cast<long>(found.count()) == cert.n && found.anomalies.empty();
        report["point_search"] = {
            {"height", height},
            {"found", found.count()},
            {"points", pts},
            {"anomalies", found.anomalies},
            {"note", "bounded search can falsify the count but not prove it; the proof is the certificate chain"}};
    } catch (const std::exception &e) {
        report["point_search"] = {{"error", e.what()}};
    }

    bool lr_ok = true;
    if (lind_reichardt) {
        auto lr = lgf::lind_reichardt_check(height, static_cast<std::uint64_t>(places_bound));
        lr_ok = lr.passed();
        report["lind_reichardt"] = {{"locally_soluble_at_checked_places", lr.locally_soluble()},
                                    {"prime_bound", lr.prime_bound},
                                    {"height", lr.height},
                                    {"rational_points", lr.rational_points},
                                    {"note", "local certification plus bounded search, not a proof of emptiness"}};
    }

    const bool ok = checks.passed() && local.passed() && search_ok && lr_ok;
    report["status"] = ok ? "pass" : "fail";
    std::cout << report.dump(2) << "\n";
    if (!ok) {
        for (const auto &m : checks.mismatches())
            std::cerr << "mismatch: " << m.check << (m.detail.empty() ? "" : " (" + m.detail + ")") << "\n";
        for (const auto &f : local.failures)
            std::cerr << "local: " << f << "\n";
        if (!search_ok)
            std::cerr << "point search disagrees with n = " << cert.n << "\n";
    }
    std::cerr << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kExitOk : kExitMathFailure;
}

int cmd_inspect(const std::string &path)
{
    lgf::ConstructionCertificate cert;
    try {
        cert = lgf::parse_certificate(read_file(path));
    } catch (const lgf::FormatError &e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kExitUsage;
    }
    const auto &E = cert.tower.curve();
    std::ostream &o = std::cout;
    o << "schema            " << lgf::kSchemaVersion << "\n";
    o << "n                 " << cert.n << "\n";
    o << "seed              a = " << lgf::to_string(E.a) << ", b = " << lgf::to_string(E.b) << "\n";
    o << "rank bound        " << cert.mw.rank_upper_bound << "\n";
    o << "torsion points    " << cert.mw.torsion_points.size() << ":";
    for (const auto &P : cert.mw.torsion_points)
        o << " " << lgf::to_string(P);
    o << "\n\ncovers\n";
    o << "  #  role      level  P.x0    P.fiber  pole_order\n";
    for (std::size_t j = 0; j < cert.tower.covers().size(); ++j) {
        const auto &c = cert.tower.covers()[j];
        o << "  " << std::setw(2) << j + 1 << " " << std::setw(9) << std::left << lgf::codec::role_name(c.role)
          << std::right << std::setw(6) << j << "  " << std::setw(6) << std::left << lgf::to_string(c.P.x0) << "  "
          << std::setw(7) << lgf::to_string(c.P.fiber) << std::right << "  " << c.pole_order << "\n";
    }
    o << "\ndesignated points\n";
    for (std::size_t i = 0; i < cert.designated.size(); ++i) {
        const auto &d = cert.designated[i];
        o << "  y" << std::setw(2) << std::left << i + 1 << std::right << "  " << std::setw(5) << std::left << d.role
          << std::right << "  value " << std::setw(6) << std::left << lgf::to_string(d.value) << std::right << "  "
          << lgf::to_string(d.point) << "\n";
    }
    const auto &sq = cert.square_data;
    o << "\nsquare classes    a = " << lgf::to_string(sq.a) << ", b = " << lgf::to_string(sq.b)
      << ", c = " << lgf::to_string(sq.c) << "\n";
    o << "                  S = " << places(sq.S) << ", w = " << lgf::to_string(sq.w) << "\n";
    o << "\ncertified counts ";
    for (const auto &e : cert.audit)
        if (e.check == "point_count")
            o << " " << e.subject << ": " << e.value << ";";
    o << "\naudit entries     " << cert.audit.size() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Forge and verify curves over Q with a prescribed number of rational points"};
    app.require_subcommand(1);

    long n = -1;
    std::string seed, classes, out;
    auto *forge = app.add_subcommand("forge", "construct a curve with exactly n rational points");
    forge->add_option("--n", n, "target number of rational points")->required();
    forge->add_option("--seed", seed, "seed curve y^2 = x^3 + a x^2 + b x as a,b (default 0,-1)");
    forge->add_option("--classes", classes, "independent square classes a,b (default 3,5)");
    forge->add_option("--out", out, "output file (default stdout)");

    std::string path;
    long height = 10000, places_bound = 1000;
    bool lind = false;
    auto *verify = app.add_subcommand("verify", "check a certificate");
    verify->add_option("file", path, "certificate JSON")->required();
    verify->add_option("--height", height, "height bound of the rational point search")->capture_default_str();
    verify->add_option("--places-bound", places_bound, "spot-check primes up to this bound")->capture_default_str();
    verify->add_flag("--lind-reichardt", lind, "also run the 2y^2 = 1 - 17x^4 fixture");

    std::string inspect_path;
    auto *inspect = app.add_subcommand("inspect", "print a certificate summary");
    inspect->add_option("file", inspect_path, "certificate JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*forge)
            return cmd_forge(n, seed, classes, out);
        if (*verify)
            return cmd_verify(path, height, places_bound, lind);
        return cmd_inspect(inspect_path);
    } catch (const UsageError &e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
}
