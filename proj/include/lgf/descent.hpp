#ifndef LGF_DESCENT_HPP
#define LGF_DESCENT_HPP

#include "lgf/elliptic.hpp"
#include "lgf/local_solubility.hpp"

#include <bit>
#include <sstream>

namespace lgf {

// One homogeneous space of the 2-isogeny descent:
//   d·w² = d²·u⁴ + A·d·u²·v² + B·v⁴
// on side 0 (A, B) = (a, b); on side 1 the isogenous curve (−2a, a² − 4b).
struct TorsorRecord {
    int side = 0;
    Integer d;
    std::vector<std::pair<Place, bool>> local; // per-place solubility
    bool everywhere_soluble() const
    {
        return std::all_of(local.begin(), local.end(), [](const auto &pl) { return pl.second; });
    }
    bool operator==(const TorsorRecord &) const = default;
};

struct MordellWeilCertificate {
    WeierstrassCurve curve;
    long rank_upper_bound = -1;
    std::vector<CurvePoint> torsion_points;
    std::vector<TorsorRecord> selmer_local_data;
    std::array<int, 2> selmer_dimension{0, 0};

    bool certifies_rank_zero() const { return rank_upper_bound == 0; }
};

// y² = g(u,v) with g = d·(d² u⁴ + A d u² v² + B v⁴)
inline BinaryQuartic torsor_quartic(const Integer &A, const Integer &B, const Integer &d)
{
    BinaryQuartic g;
    g.c[4] = d * d * d;
    g.c[3] = 0;
    g.c[2] = A * d * d;
    g.c[1] = 0;
    g.c[0] = B * d;
    return g;
}

// ±(products of distinct primes dividing B), sorted
inline std::vector<Integer> squarefree_divisors(const Integer &B)
{
    auto primes = prime_divisors(B);
    std::vector<Integer> out;
    for (std::uint64_t mask = 0; mask < (1ULL << primes.size()); ++mask) {
        Integer d = 1;
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (mask >> i & 1)
                d *= from_u64(primes[i]);
        out.push_back(d);
        out.push_back(-d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Places where torsor solubility can fail: ∞, 2 and the primes of b(a² − 4b).
inline std::vector<Place> descent_places(const WeierstrassCurve &E)
{
    const Integer a = E.a.get_num(), b = E.b.get_num();
    std::vector<Place> places{Place::infinity(), Place::finite(2)};
    for (auto p : prime_divisors(b * (a * a - 4 * b)))
        if (p != 2)
            places.push_back(Place::finite(p));
    return places;
}

// Rank bound from the Selmer groups of the 2-isogeny with kernel (0,0) and
// its dual: rank E(Q) ≤ dim S^(φ) + dim S^(φ̂) − 2.
inline MordellWeilCertificate selmer_rank_bound(const WeierstrassCurve &E)
{
    if (!E.integral())
        throw ArithmeticError("descent needs an integral model");
    const Integer a = E.a.get_num(), b = E.b.get_num();
    const std::array<std::pair<Integer, Integer>, 2> sides{std::make_pair(a, b),
                                                           std::make_pair(Integer(-2 * a), Integer(a * a - 4 * b))};
    const auto places = descent_places(E);

    MordellWeilCertificate cert;
    cert.curve = E;
    for (int side = 0; side < 2; ++side) {
        const auto &[A, B] = sides[static_cast<std::size_t>(side)];
        std::size_t soluble = 0;
        for (const Integer &d : squarefree_divisors(B)) {
            TorsorRecord rec;
            rec.side = side;
            rec.d = d;
            const BinaryQuartic g = torsor_quartic(A, B, d);
            for (const Place &v : places) {
                bool ok = locally_soluble(g, v);
                rec.local.emplace_back(v, ok);
                if (!ok)
                    break; // one failure suffices
            }
            if (rec.everywhere_soluble())
                ++soluble;
            cert.selmer_local_data.push_back(std::move(rec));
        }
        if (!std::has_single_bit(soluble))
            throw ArithmeticError("Selmer set is not a group; local solubility test is inconsistent");
        cert.selmer_dimension[static_cast<std::size_t>(side)] = std::countr_zero(soluble);
    }
    cert.rank_upper_bound = cert.selmer_dimension[0] + cert.selmer_dimension[1] - 2;
    cert.torsion_points = nagell_lutz_torsion(E);
    return cert;
}

class SeedRejected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string describe_descent(const MordellWeilCertificate &c)
{
    std::ostringstream os;
    os << "y^2 = x^3 + " << to_string(c.curve.a) << " x^2 + " << to_string(c.curve.b) << " x: dim Sel(phi) = "
       << c.selmer_dimension[0] << ", dim Sel(phi^) = " << c.selmer_dimension[1]
       << ", rank bound = " << c.rank_upper_bound;
    return os.str();
}

} // namespace lgf

#endif // LGF_DESCENT_HPP
