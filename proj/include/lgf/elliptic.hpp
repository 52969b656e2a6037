#ifndef LGF_ELLIPTIC_HPP
#define LGF_ELLIPTIC_HPP

#include "lgf/arith.hpp"
#include "lgf/poly.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

namespace lgf {

// y² = x³ + a·x² + b·x, so (0,0) is a rational 2-torsion point.
struct WeierstrassCurve {
    Rational a, b;

    WeierstrassCurve() = default;
    WeierstrassCurve(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_))
    {
        if (b == 0 || a * a - 4 * b == 0)
            throw ArithmeticError("singular curve y^2 = x^3 + " + to_string(a) + " x^2 + " + to_string(b) + " x");
    }

    // right-hand side F(x)
    Rational rhs(const Rational &x) const { return x * x * x + a * x * x + b * x; }
    Poly rhs_poly() const { return Poly(std::vector<Rational>{0, b, a, 1}); }
    bool integral() const { return is_integer(a) && is_integer(b); }
    // 16·b²·(a² − 4b)
    Rational discriminant() const { return 16 * b * b * (a * a - 4 * b); }

    bool operator==(const WeierstrassCurve &) const = default;
};

struct CurvePoint {
    std::optional<std::pair<Rational, Rational>> xy; // nullopt = point at infinity

    static CurvePoint infinity() { return {}; }
    static CurvePoint affine(Rational x, Rational y) { return {std::make_pair(std::move(x), std::move(y))}; }

    bool is_infinity() const { return !xy.has_value(); }
    const Rational &x() const { return xy->first; }
    const Rational &y() const { return xy->second; }

    bool operator==(const CurvePoint &) const = default;
    friend bool operator<(const CurvePoint &p, const CurvePoint &q)
    {
        if (p.is_infinity() || q.is_infinity())
            return p.is_infinity() && !q.is_infinity();
        if (p.x() != q.x())
            return p.x() < q.x();
        return p.y() < q.y();
    }
};

inline std::string to_string(const CurvePoint &P)
{
    return P.is_infinity() ? "inf" : "(" + to_string(P.x()) + "," + to_string(P.y()) + ")";
}

inline bool on_curve(const WeierstrassCurve &E, const CurvePoint &P)
{
    return P.is_infinity() || P.y() * P.y() == E.rhs(P.x());
}

inline CurvePoint negate(const CurvePoint &P)
{
    if (P.is_infinity())
        return P;
    return CurvePoint::affine(P.x(), -P.y());
}

// Chord-and-tangent addition.
inline CurvePoint add_points(const WeierstrassCurve &E, const CurvePoint &P, const CurvePoint &Q)
{
    if (!on_curve(E, P) || !on_curve(E, Q))
        throw ArithmeticError("point not on curve");
    if (P.is_infinity())
        return Q;
    if (Q.is_infinity())
        return P;
    Rational lambda;
    if (P.x() == Q.x()) {
        if (P.y() != Q.y() || P.y() == 0)
            return CurvePoint::infinity();
        lambda = (3 * P.x() * P.x() + 2 * E.a * P.x() + E.b) / (2 * P.y());
    } else {
        lambda = (Q.y() - P.y()) / (Q.x() - P.x());
    }
    Rational x3 = lambda * lambda - E.a - P.x() - Q.x();
    Rational y3 = -(P.y() + lambda * (x3 - P.x()));
    return CurvePoint::affine(x3, y3);
}

inline CurvePoint multiply(const WeierstrassCurve &E, long k, const CurvePoint &P)
{
    CurvePoint base = k < 0 ? negate(P) : P;
    CurvePoint acc = CurvePoint::infinity();
    for (unsigned long n = static_cast<unsigned long>(k < 0 ? -k : k); n; n >>= 1) {
        if (n & 1)
            acc = add_points(E, acc, base);
        base = add_points(E, base, base);
    }
    return acc;
}

// Smallest n ≤ bound with nP = O, or 0.
inline int torsion_order(const WeierstrassCurve &E, const CurvePoint &P, int bound = 12)
{
    CurvePoint Q = P;
    for (int n = 1; n <= bound; ++n) {
        if (Q.is_infinity())
            return n;
        Q = add_points(E, Q, P);
    }
    return 0;
}

namespace detail {

inline std::vector<Integer> positive_divisors(const Integer &n)
{
    std::vector<Integer> divs{1};
    for (auto [p, e] : factor(n)) {
        std::size_t sz = divs.size();
        Integer pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= from_u64(p);
            for (std::size_t i = 0; i < sz; ++i)
                divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

} // namespace detail

// All torsion points of an integral model. Nagell-Lutz: a torsion point is
// integral with y = 0 or y² | disc(x³ + a x² + b x) = b²(a² − 4b); candidates
// are kept when some multiple up to 12 (Mazur's bound) is O.
inline std::vector<CurvePoint> nagell_lutz_torsion(const WeierstrassCurve &E)
{
    if (!E.integral())
        throw ArithmeticError("Nagell-Lutz needs an integral model");
    const Integer a = E.a.get_num(), b = E.b.get_num();
    const Integer D = b * b * (a * a - 4 * b);

    std::set<CurvePoint> found{CurvePoint::infinity()};
    auto try_x = [&](const Integer &x, const Integer &y) {
        Rational xr(x), yr(y);
        if (yr * yr != E.rhs(xr))
            return;
        for (const CurvePoint &P : {CurvePoint::affine(xr, yr), CurvePoint::affine(xr, -yr)})
            if (torsion_order(E, P) != 0)
                found.insert(P);
    };

    // y = 0: x = 0 or a root of x² + a x + b, which divides b
    try_x(0, 0);
    for (const Integer &d : detail::positive_divisors(b))
        for (const Integer &x : {d, Integer(-d)})
            try_x(x, 0);

    // y ≠ 0: y² | D and x | y² (constant term of x³ + a x² + b x − y²)
    for (Integer y = 1; y * y <= abs(D); ++y) {
        if (!mpz_divisible_p(D.get_mpz_t(), Integer(y * y).get_mpz_t()))
            continue;
        for (const Integer &d : detail::positive_divisors(y * y))
            for (const Integer &x : {d, Integer(-d)})
                try_x(x, y);
    }
    return {found.begin(), found.end()};
}

// A closed point of degree 2: x = x0 with y² = F(x0) not a rational square.
struct QuadraticPoint {
    Rational x0;
    Rational fiber; // F(x0)

    bool operator==(const QuadraticPoint &) const = default;
};

// First x0 = 2, 3, ... whose fiber is a nonzero nonsquare, skipping `forbidden`.
inline QuadraticPoint find_closed_point(const WeierstrassCurve &E, const std::vector<Rational> &forbidden = {})
{
    for (long x0 = 2;; ++x0) {
        Rational x(x0);
        if (std::find(forbidden.begin(), forbidden.end(), x) != forbidden.end())
            continue;
        Rational v = E.rhs(x);
        if (v == 0 || is_rational_square(v))
            continue;
        return {x, v};
    }
}

} // namespace lgf

#endif // LGF_ELLIPTIC_HPP
