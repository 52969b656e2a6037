#ifndef LGF_LOCAL_SOLUBILITY_HPP
#define LGF_LOCAL_SOLUBILITY_HPP

#include "lgf/arith.hpp"
#include "lgf/poly.hpp"

#include <array>
#include <limits>

namespace lgf {

// Binary quartic g(x,z) = c[4] x⁴ + c[3] x³ z + c[2] x² z² + c[1] x z³ + c[0] z⁴
// with integer coefficients; the curve is y² = g(x,z) in weighted P(1,1,2).
struct BinaryQuartic {
    std::array<Integer, 5> c;

    Integer operator()(const Integer &x, const Integer &z) const
    {
        Integer r = 0, zp = 1;
        std::array<Integer, 5> zpow;
        for (int i = 0; i < 5; ++i) {
            zpow[static_cast<std::size_t>(i)] = zp;
            zp *= z;
        }
        Integer xp = 1;
        for (int i = 0; i < 5; ++i) {
            r += c[static_cast<std::size_t>(i)] * xp * zpow[static_cast<std::size_t>(4 - i)];
            xp *= x;
        }
        return r;
    }
    // g(x, 1)
    std::array<Integer, 5> affine() const { return c; }
    // g(1, z)
    std::array<Integer, 5> reversed() const { return {c[4], c[3], c[2], c[1], c[0]}; }
};

namespace detail {

inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max() / 4;

inline long vp(const Integer &n, std::uint64_t p) { return n == 0 ? kInfiniteValuation : valuation(n, p); }

// integer n is a square in Q_p (0 counts)
inline bool padic_square(const Integer &n, std::uint64_t p)
{
    if (n == 0)
        return true;
    return is_local_square(Rational(n), Place::finite(p));
}

// Taylor coefficients of g at x0: g(x0 + h) = Σ t_k h^k
inline std::array<Integer, 5> taylor(const std::array<Integer, 5> &g, const Integer &x0)
{
    std::array<Integer, 5> t = g;
    // repeated synthetic division by (h - ... ) i.e. Taylor shift
    for (int i = 0; i < 5; ++i)
        for (int j = 3; j >= i; --j)
            t[static_cast<std::size_t>(j)] += x0 * t[static_cast<std::size_t>(j + 1)];
    return t;
}

// Is there x ≡ x0 (mod p^n), x ∈ Z_p, with g(x) ∈ Q_p² (zero allowed)?
inline bool zp_soluble(const std::array<Integer, 5> &g, std::uint64_t p, const Integer &x0, long n)
{
    const auto t = taylor(g, x0);
    const Integer &gx = t[0];
    if (gx == 0)
        return true;
    const long lambda = vp(gx, p);
    const long e = p == 2 ? 3 : 1;
    // every point of the class moves g by at least p^delta
    long delta = kInfiniteValuation;
    for (int k = 1; k <= 4; ++k)
        if (t[static_cast<std::size_t>(k)] != 0)
            delta = std::min(delta, vp(t[static_cast<std::size_t>(k)], p) + k * n);
    if (delta >= lambda + e)
        return padic_square(gx, p);
    // Hensel: a root of g lies in the class
    const long mu = vp(t[1], p);
    if (t[1] != 0 && lambda > 2 * mu && lambda - mu >= n)
        return true;
    Integer step = 1;
    mpz_ui_pow_ui(step.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
    for (std::uint64_t j = 0; j < p; ++j)
        if (zp_soluble(g, p, x0 + from_u64(j) * step, n + 1))
            return true;
    return false;
}

} // namespace detail

// y² = g(x,z) has a point over Q_p. P¹(Q_p) = {(x:1) : x ∈ Z_p} ∪ {(1:z) : z ∈ pZ_p};
// each chart is refined p-adically until Hensel's lemma decides every class.
// g must have nonzero discriminant for termination.
inline bool qp_soluble(const BinaryQuartic &g, std::uint64_t p)
{
    return detail::zp_soluble(g.affine(), p, 0, 0) || detail::zp_soluble(g.reversed(), p, 0, 1);
}

// y² = g(x,z) has a real point.
inline bool real_soluble(const BinaryQuartic &g)
{
    if (sgn(g.c[4]) >= 0)
        return true;
    // g(x,1) < 0 near ±∞; a real point exists iff g(x,1) reaches zero
    Poly affine(std::vector<Rational>{Rational(g.c[0]), Rational(g.c[1]), Rational(g.c[2]), Rational(g.c[3]),
                                      Rational(g.c[4])});
    return count_real_roots(affine) > 0;
}

inline bool locally_soluble(const BinaryQuartic &g, const Place &v)
{
    return v.is_infinite() ? real_soluble(g) : qp_soluble(g, v.prime());
}

} // namespace lgf

#endif // LGF_LOCAL_SOLUBILITY_HPP
