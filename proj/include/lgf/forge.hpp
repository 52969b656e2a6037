#ifndef LGF_FORGE_HPP
#define LGF_FORGE_HPP

#include "lgf/certificate.hpp"
#include "lgf/search.hpp"

namespace lgf {

struct ForgeOptions {
    Rational seed_a = 0, seed_b = -1;
    Rational class_a = 3, class_b = 5;
};

class ForgeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline MordellWeilCertificate build_seed(const WeierstrassCurve &E)
{
    if (!E.integral())
        throw SeedRejected("seed curve must have integral coefficients");
    MordellWeilCertificate mw = selmer_rank_bound(E);
    if (!mw.certifies_rank_zero())
        throw SeedRejected(describe_descent(mw) + "; the seed needs a certified rank bound of 0");
    return mw;
}

inline MordellWeilCertificate build_seed() { return build_seed(WeierstrassCurve(0, -1)); }

// Fewest doublings of the seed's point set reaching n + 4 points.
inline std::size_t doublings_needed(std::size_t seed_points, long n)
{
    std::size_t L = 0;
    while (seed_points << L < static_cast<std::size_t>(n) + 4)
        ++L;
    return L;
}

namespace detail {

inline constexpr long kMaxPoleOrder = 41;
inline constexpr int kMaxClosedPointAttempts = 12;

inline void audit(std::vector<AuditEntry> *log, std::string check, std::string subject, std::string value)
{
    if (log)
        log->push_back({std::move(check), std::move(subject), std::move(value)});
}

// Value of the numerator's p- or q-part at x0 once the pole (x − x0)^m is
// factored out: the coefficient forcing a pole of exact order m.
inline Rational pole_coefficient(const BaseFunction &b, const Rational &x0, long m, bool q_part)
{
    Poly full = Poly::linear(x0).pow(static_cast<unsigned>(m));
    auto [mult, rem] = divmod(full, b.d());
    if (!rem.is_zero())
        throw ForgeError("basis function with a pole off the chosen point");
    return ((q_part ? b.q() : b.p()) * mult)(x0);
}

inline bool unit_for_all_covers(const Tower &T, const QuadraticPoint &P)
{
    for (const auto &c : T.covers()) {
        if (c.P.x0 == P.x0)
            return false;
        for (const auto &comp : c.f.comps)
            if (!comp.is_zero() && (comp.d()(P.x0) == 0 || T.norm_numerator(comp)(P.x0) == 0))
                return false;
    }
    return true;
}

inline std::vector<Rational> used_x0(const Tower &T)
{
    std::vector<Rational> out;
    for (const auto &c : T.covers())
        out.push_back(c.P.x0);
    return out;
}

} // namespace detail

// Appends u² = f with f ∈ L(m·P) on the base curve: f = 1 at every rational
// base point (so every rational point of the current top level splits),
// pole of odd order m at a fresh degree-2 point P, simple zeros, supports
// disjoint from the earlier covers. m escalates 1, 3, 5, ...; P is
// re-selected when no m up to the cap yields a valid f.
inline const Cover &doubling_cover(Tower &T, const std::vector<CurvePoint> &base_points,
                                   std::vector<AuditEntry> *log = nullptr)
{
    const std::size_t index = T.level() + 1;
    std::vector<Rational> forbidden = detail::used_x0(T);
    for (int attempt = 0; attempt < detail::kMaxClosedPointAttempts; ++attempt) {
        QuadraticPoint P = find_closed_point(T.curve(), forbidden);
        forbidden.push_back(P.x0);
        if (!detail::unit_for_all_covers(T, P))
            continue;
        for (long m = 1; m <= detail::kMaxPoleOrder; m += 2) {
            const auto basis = T.rr_space(Divisor().add(P, m));
            Matrix A;
            std::vector<Rational> rhs;
            for (const auto &z : base_points) {
                Row r;
                for (const auto &b : basis)
                    r.push_back(T.evaluate(b, z));
                A.push_back(std::move(r));
                rhs.push_back(1);
            }
            std::optional<std::vector<Rational>> sol;
            for (bool q_part : {false, true}) {
                Matrix Am = A;
                Row r;
                for (const auto &b : basis)
                    r.push_back(detail::pole_coefficient(b, P.x0, m, q_part));
                Am.push_back(std::move(r));
                std::vector<Rational> bm = rhs;
                bm.push_back(1);
                if ((sol = solve_affine(Am, bm, basis.size())))
                    break;
            }
            if (!sol)
                continue;
            BaseFunction f;
            for (std::size_t k = 0; k < basis.size(); ++k)
                if ((*sol)[k] != 0)
                    f = f + basis[k].scaled((*sol)[k]);
            Cover c{FunctionElement(f), P, m, CoverRole::doubling};
            if (!T.simple_zero_violation(f).empty() || T.order_at(f, P) != -m)
                continue;
            bool disjoint = true;
            for (const auto &prev : T.covers())
                disjoint = disjoint && T.supports_disjoint(prev, c);
            if (!disjoint)
                continue;
            const std::string subject = "cover " + std::to_string(index);
            detail::audit(log, "rr_dimension", subject, std::to_string(basis.size()));
            detail::audit(log, "pole_order", subject, std::to_string(m));
            for (const auto &z : base_points)
                detail::audit(log, "value", subject + " @ " + to_string(z), to_string(T.evaluate(f, z)));
            T.push_cover(std::move(c));
            return T.covers().back();
        }
    }
    throw ForgeError("no doubling cover found within the pole-order and closed-point limits");
}

// Basis of the final cover's function space at level L:
//   L(m·P) ⊕ ⊕_{S≠∅} u^S·L((m−1)·P − Σ_{j∈S} s_j·P_j),  s_j = ⌈m_j/2⌉,
// every element of which lies in L(π*(m·P)) with the u^∅ part carrying
// the only possible pole of order m above P.
inline std::vector<FunctionElement> final_cover_basis(const Tower &T, const QuadraticPoint &P, long m)
{
    const std::size_t L = T.level();
    std::vector<FunctionElement> out;
    for (std::size_t S = 0; S < (std::size_t{1} << L); ++S) {
        Divisor D;
        D.add(P, S == 0 ? m : m - 1);
        for (std::size_t j = 0; j < L; ++j)
            if (S >> j & 1) {
                const Cover &c = T.covers()[j];
                D.add(c.P, -((c.pole_order + 1) / 2));
            }
        for (auto &b : T.rr_space(D)) {
            FunctionElement e = FunctionElement().lifted(L);
            e.comps[S] = std::move(b);
            out.push_back(std::move(e));
        }
    }
    return out;
}

inline std::string role_for(std::size_t i, long n)
{
    static const char *named[] = {"a", "b", "ab"};
    const auto k = static_cast<long>(i) - n;
    return k < 0 ? "zero" : k < 3 ? named[k] : "c";
}

inline Rational target_for(const std::string &role, const SquareClassData &sq)
{
    if (role == "zero")
        return 0;
    if (role == "a")
        return sq.a;
    if (role == "b")
        return sq.b;
    if (role == "ab")
        return sq.a * sq.b;
    return sq.c;
}

// Appends the final cover u² = f over the current top level, whose rational
// points `points` (canonical order) become y_1..y_m: simple zeros at
// y_1..y_n, values a, b, ab at y_{n+1..n+3}, c at the rest, odd pole order m
// above a fresh degree-2 point. Returns the designated points.
inline std::vector<DesignatedPoint> final_cover(Tower &T, const std::vector<TowerPoint> &points, long n,
                                                const SquareClassData &sq, std::vector<AuditEntry> *log = nullptr)
{
    if (n < 0)
        throw std::invalid_argument("n must be nonnegative");
    if (points.size() < static_cast<std::size_t>(n) + 4)
        throw ForgeError("final cover needs at least n + 4 rational points, have " + std::to_string(points.size()));
    std::vector<DesignatedPoint> designated;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::string role = role_for(i, n);
        Rational v = target_for(role, sq);
        designated.push_back({points[i], std::move(role), std::move(v)});
    }

    const std::size_t L = T.level();
    std::vector<Rational> forbidden = detail::used_x0(T);
    for (int attempt = 0; attempt < detail::kMaxClosedPointAttempts; ++attempt) {
        QuadraticPoint P = find_closed_point(T.curve(), forbidden);
        forbidden.push_back(P.x0);
        if (!detail::unit_for_all_covers(T, P))
            continue;
        // local data at the points, reused across m
        std::vector<std::vector<Series>> units;
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
            units.push_back(T.unit_series(points[i], L, 12));

        for (long m = 1; m <= detail::kMaxPoleOrder; m += 2) {
            const auto basis = final_cover_basis(T, P, m);
            auto slot = [](const FunctionElement &e) {
                std::size_t S = 0;
                while (e.comps[S].is_zero())
                    ++S;
                return S;
            };
            Matrix A;
            std::vector<Rational> rhs;
            for (const auto &d : designated) {
                Row r;
                for (const auto &b : basis)
                    r.push_back(T.evaluate(b, d.point));
                A.push_back(std::move(r));
                rhs.push_back(d.value);
            }
            for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
                Row r;
                for (const auto &b : basis) {
                    const std::size_t S = slot(b);
                    Series s = T.series(b.comps[S], points[i].base, 12) * units[i][S];
                    r.push_back(s.coeff(1));
                }
                A.push_back(std::move(r));
                rhs.push_back(1);
            }
            std::optional<std::vector<Rational>> sol;
            for (bool q_part : {false, true}) {
                Matrix Am = A;
                Row r;
                for (const auto &b : basis)
                    r.push_back(slot(b) == 0 ? detail::pole_coefficient(b.comps[0], P.x0, m, q_part) : Rational(0));
                Am.push_back(std::move(r));
                std::vector<Rational> bm = rhs;
                bm.push_back(1);
                if ((sol = solve_affine(Am, bm, basis.size())))
                    break;
            }
            if (!sol)
                continue;
            FunctionElement f = FunctionElement().lifted(L);
            for (std::size_t k = 0; k < basis.size(); ++k)
                if ((*sol)[k] != 0)
                    f = T.add(f, T.scale(basis[k], (*sol)[k]));

            if (T.order_at(f, LiftedPoint{P, L}) != -m)
                continue;
            bool ok = true;
            for (std::size_t i = 0; i < static_cast<std::size_t>(n) && ok; ++i)
                ok = T.order_at(f, points[i]) == 1;
            if (!ok)
                continue;

            detail::audit(log, "rr_dimension", "final cover", std::to_string(basis.size()));
            detail::audit(log, "pole_order", "final cover", std::to_string(m));
            for (const auto &d : designated) {
                detail::audit(log, "value", "final cover @ " + to_string(d.point), to_string(T.evaluate(f, d.point)));
                if (d.role == "zero")
                    detail::audit(log, "zero_order", "final cover @ " + to_string(d.point),
                                  std::to_string(T.order_at(f, d.point)));
            }
            T.push_cover(Cover{std::move(f), P, m, CoverRole::final_cover});
            return designated;
        }
    }
    throw ForgeError("no final cover found within the pole-order and closed-point limits");
}

inline ConstructionCertificate forge(long n, const ForgeOptions &opt = {})
{
    if (n < 0)
        throw std::invalid_argument("n must be nonnegative");
    ConstructionCertificate cert;
    cert.n = n;
    auto *log = &cert.audit;

    WeierstrassCurve E(opt.seed_a, opt.seed_b);
    cert.mw = build_seed(E);
    detail::audit(log, "selmer_dimension", "phi", std::to_string(cert.mw.selmer_dimension[0]));
    detail::audit(log, "selmer_dimension", "phi_hat", std::to_string(cert.mw.selmer_dimension[1]));
    detail::audit(log, "rank_upper_bound", "seed", std::to_string(cert.mw.rank_upper_bound));
    detail::audit(log, "torsion_count", "seed", std::to_string(cert.mw.torsion_points.size()));

    // rank 0: the torsion points are all of Z(Q)
    const std::vector<CurvePoint> &base = cert.mw.torsion_points;
    cert.tower = Tower(E);
    const std::size_t L = doublings_needed(base.size(), n);
    for (std::size_t l = 0; l < L; ++l)
        doubling_cover(cert.tower, base, log);

    ClimbResult climb = climb_points(cert.tower, base, L);
    for (std::size_t l = 0; l <= L; ++l) {
        if (climb.level_counts[l] != base.size() << l)
            throw ForgeError("rational point count at level " + std::to_string(l) + " did not double");
        detail::audit(log, "point_count", "level " + std::to_string(l), std::to_string(climb.level_counts[l]));
    }

    cert.square_data = assemble(opt.class_a, opt.class_b);
    const SquareClassData &sq = cert.square_data;
    std::string S;
    for (const auto &v : sq.S)
        S += (S.empty() ? "" : ",") + to_string(v);
    detail::audit(log, "S", "a, b", "{" + S + "}");
    detail::audit(log, "valuation_at_w", "c", std::to_string(valuation(sq.c, sq.w)));
    for (const auto &v : sq.S)
        detail::audit(log, "local_square", "c @ " + to_string(v), is_local_square(sq.c, v) ? "true" : "false");

    cert.designated = final_cover(cert.tower, climb.points, n, sq, log);

    ClimbResult top = climb_points(cert.tower, base, cert.tower.level());
    if (top.count() != static_cast<std::size_t>(n) || !top.anomalies.empty())
        throw ForgeError("final level has " + std::to_string(top.count()) + " rational points, expected " +
                         std::to_string(n));
    detail::audit(log, "extra_poles", "final cover", "none");
    detail::audit(log, "point_count", "level " + std::to_string(cert.tower.level()), std::to_string(top.count()));
    return cert;
}

} // namespace lgf

#endif // LGF_FORGE_HPP
