#ifndef LGF_SEARCH_HPP
#define LGF_SEARCH_HPP

#include "lgf/function_field.hpp"

#include <cmath>
#include <numeric>
#include <set>

namespace lgf {

namespace detail {

inline bool isqrt_u128(unsigned __int128 v, unsigned __int128 &root)
{
    auto r = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v)
        --r;
    while ((r + 1) * (r + 1) <= v)
        ++r;
    root = r;
    return r * r == v;
}

// residues modulo kSieveModulus that are squares mod 64, 9, 5 and 7
inline constexpr std::uint32_t kSieveModulus = 64 * 9 * 5 * 7;

inline const std::vector<bool> &square_residue_table()
{
    static const std::vector<bool> table = [] {
        std::vector<bool> t(kSieveModulus, true);
        for (std::uint32_t m : {64u, 9u, 5u, 7u}) {
            std::vector<bool> sq(m, false);
            for (std::uint32_t i = 0; i < m; ++i)
                sq[i * i % m] = true;
            for (std::uint32_t r = 0; r < kSieveModulus; ++r)
                if (!sq[r % m])
                    t[r] = false;
        }
        return t;
    }();
    return table;
}

} // namespace detail

// All affine points (x, y) with x = p/q in lowest terms and |p|, |q| ≤ H,
// plus ∞. On y² = x³ + a x² + b x with integral a, b a rational point has
// x = p/d² with gcd(p, d) = 1, so q = d² and y = Y/d³ with
// Y² = p³ + a p² d² + b p d⁴; the search runs over (p, d), sieving Y² by
// residues before the exact square test.
inline std::vector<CurvePoint> base_point_search(const WeierstrassCurve &E, long H)
{
    if (H < 1)
        throw std::invalid_argument("height bound must be at least 1");
    if (!E.integral())
        throw ArithmeticError("point search needs an integral model");
    std::set<CurvePoint> found{CurvePoint::infinity()};
    const long dmax = static_cast<long>(std::sqrt(static_cast<double>(H)) + 1);
    const Integer A = E.a.get_num(), B = E.b.get_num();

    // exact fast path when every term stays well below 2^126
    const double bound = std::pow(double(H), 3) * (1 + std::abs(A.get_d()) + std::abs(B.get_d()));
    const bool fast = bound < std::ldexp(1.0, 120) && A.fits_slong_p() && B.fits_slong_p();
    const auto &table = detail::square_residue_table();
    const auto M = static_cast<long>(detail::kSieveModulus);

    auto record = [&](long p, long d, const Integer &Y) {
        Rational x(Integer(p), Integer(d) * d);
        Rational y(Y, Integer(d) * d * d);
        x.canonicalize();
        y.canonicalize();
        found.insert(CurvePoint::affine(x, y));
        found.insert(CurvePoint::affine(x, -y));
    };

    for (long d = 1; d <= dmax; ++d) {
        const long q = d * d;
        if (q > H)
            break;
        if (fast) {
            const __int128 a = A.get_si(), b = B.get_si(), d2 = q, d4 = d2 * d2;
            // residue filter for this d: V(p) mod M depends only on p mod M
            std::vector<bool> ok(static_cast<std::size_t>(M));
            const long aM = ((A.get_si() % M) + M) % M, bM = ((B.get_si() % M) + M) % M, qM = q % M;
            for (long r = 0; r < M; ++r) {
                __int128 v = static_cast<__int128>(r) * r % M * r % M + static_cast<__int128>(aM) * r % M * r % M * qM % M +
                             static_cast<__int128>(bM) * r % M * qM % M * qM % M;
                ok[static_cast<std::size_t>(r)] = table[static_cast<std::size_t>(v % M)];
            }
            long r = ((-H % M) + M) % M;
            for (long p = -H; p <= H; ++p, r = r + 1 == M ? 0 : r + 1) {
                if (!ok[static_cast<std::size_t>(r)])
                    continue;
                const __int128 P = p;
                const __int128 V = P * (P * P + a * P * d2 + b * d4);
                if (V < 0)
                    continue;
                unsigned __int128 root;
                if (!detail::isqrt_u128(static_cast<unsigned __int128>(V), root))
                    continue;
                if (std::gcd(p, d) != 1)
                    continue;
                Integer Y;
                mpz_import(Y.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0,
                           std::array<std::uint64_t, 2>{static_cast<std::uint64_t>(root),
                                                        static_cast<std::uint64_t>(root >> 64)}
                               .data());
                record(p, d, Y);
            }
        } else {
            const Integer d2 = q, d4 = d2 * d2;
            for (long p = -H; p <= H; ++p) {
                if (std::gcd(p, d) != 1)
                    continue;
                const Integer P = p;
                const Integer V = P * (P * P + A * P * d2 + B * d4);
                if (is_perfect_square(V))
                    record(p, d, isqrt(V));
            }
        }
    }
    return {found.begin(), found.end()};
}

// Rational points of every tower level above a list of base points.
struct ClimbResult {
    std::vector<TowerPoint> points;        // top level, sorted
    std::vector<std::string> pole_points;  // top-level points over poles of the last cover
    std::vector<std::string> anomalies;    // situations the climb cannot resolve
    std::vector<std::size_t> level_counts; // points per level, 0..top

    std::size_t count() const { return points.size() + pole_points.size(); }
};

// Climbs through covers[0..levels): above a point where f takes a nonzero
// square value there are two points, one above a zero, none above a
// nonsquare; above a pole of odd order one point, of even order two or none
// by the leading coefficient. Points over poles cannot be continued upward.
inline ClimbResult climb_points(const Tower &T, const std::vector<CurvePoint> &base, std::size_t levels)
{
    ClimbResult out;
    std::vector<TowerPoint> cur;
    for (const auto &z : base)
        cur.push_back({z, {}});
    std::sort(cur.begin(), cur.end());
    out.level_counts.push_back(cur.size());
    for (std::size_t l = 1; l <= levels; ++l) {
        const bool top = l == levels;
        const FunctionElement &f = T.covers()[l - 1].f;
        std::vector<TowerPoint> next;
        std::size_t at_poles = 0;
        for (const auto &P : cur) {
            auto extend = [&](const Rational &c) {
                TowerPoint Q = P;
                Q.coords.push_back(c);
                next.push_back(std::move(Q));
            };
            try {
                Rational v = T.evaluate(f, P);
                if (v == 0) {
                    extend(0);
                } else if (is_rational_square(v)) {
                    Rational r = rational_sqrt(v);
                    extend(-r);
                    extend(r);
                }
            } catch (const PoleError &) {
                long k;
                Rational lead;
                try {
                    Series s = T.expand(f, P, Series::kExact);
                    k = s.valuation();
                    lead = s.leading();
                } catch (const std::exception &e) {
                    out.anomalies.push_back("pole of cover " + std::to_string(l) + " at " + to_string(P) +
                                            " could not be expanded: " + e.what());
                    continue;
                }
                std::size_t pts = k % 2 != 0 ? 1 : is_rational_square(lead) ? 2 : 0;
                if (pts == 0)
                    continue;
                if (!top) {
                    out.anomalies.push_back("points over a pole of intermediate cover " + std::to_string(l) + " at " +
                                            to_string(P));
                    continue;
                }
                for (std::size_t i = 0; i < pts; ++i)
                    out.pole_points.push_back(to_string(P) + "|pole" + (pts == 2 ? (i ? "+" : "-") : ""));
                at_poles += pts;
            } catch (const std::exception &e) {
                out.anomalies.push_back("cover " + std::to_string(l) + " at " + to_string(P) + ": " + e.what());
            }
        }
        std::sort(next.begin(), next.end());
        out.level_counts.push_back(next.size() + at_poles);
        cur = std::move(next);
    }
    out.points = std::move(cur);
    return out;
}

// Bounded-height search on the whole tower: base search, then climb.
inline ClimbResult rational_point_search(const Tower &T, long H)
{
    return climb_points(T, base_point_search(T.curve(), H), T.level());
}

} // namespace lgf

#endif // LGF_SEARCH_HPP
