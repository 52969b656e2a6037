#ifndef LGF_SQUARECLASSES_HPP
#define LGF_SQUARECLASSES_HPP

#include "lgf/arith.hpp"

#include <array>
#include <set>
#include <utility>

namespace lgf {

struct SquareClassData {
    Rational a, b, c;
    PlaceSet S;
    Place w = Place::infinity();
};

// Coordinates of q in Q^×/Q^×² ≅ F₂^(sign ⊕ primes): bit 0 is the sign, the
// rest are valuation parities at `primes`.
inline std::vector<int> square_class_vector(const Rational &q, const std::vector<std::uint64_t> &primes)
{
    std::vector<int> out;
    out.push_back(sgn(q) < 0 ? 1 : 0);
    for (auto p : primes)
        out.push_back(static_cast<int>(((valuation(q, p) % 2) + 2) % 2));
    return out;
}

// F₂-independence of the classes of a and b (none of a, b, ab is a square).
inline bool classes_independent(const Rational &a, const Rational &b)
{
    if (a == 0 || b == 0)
        return false;
    std::set<std::uint64_t> ps;
    for (const Integer *z : {&a.get_num(), &a.get_den(), &b.get_num(), &b.get_den()})
        for (auto p : prime_divisors(*z))
            ps.insert(p);
    std::vector<std::uint64_t> primes(ps.begin(), ps.end());
    auto va = square_class_vector(a, primes);
    auto vb = square_class_vector(b, primes);
    bool a_zero = std::all_of(va.begin(), va.end(), [](int x) { return x == 0; });
    bool b_zero = std::all_of(vb.begin(), vb.end(), [](int x) { return x == 0; });
    bool equal = va == vb;
    // rank 2 over F₂ iff both nonzero and distinct
    return !a_zero && !b_zero && !equal;
}

inline std::pair<Rational, Rational> independent_classes() { return {Rational(3), Rational(5)}; }

// Places where none of a, b, ab is a local square. Only ∞, 2 and primes of
// the numerators/denominators of a and b can qualify: elsewhere a and b are
// units at an odd prime and one of a, b, ab is a residue.
inline PlaceSet compute_S(const Rational &a, const Rational &b)
{
    if (!classes_independent(a, b))
        throw ArithmeticError("square classes of a and b are not independent");
    std::set<std::uint64_t> candidates{2};
    for (const Integer *z : {&a.get_num(), &a.get_den(), &b.get_num(), &b.get_den()})
        for (auto p : prime_divisors(*z))
            candidates.insert(p);
    const Rational ab = a * b;
    PlaceSet S;
    auto all_nonsquare = [&](const Place &v) {
        return !is_local_square(a, v) && !is_local_square(b, v) && !is_local_square(ab, v);
    };
    if (all_nonsquare(Place::infinity()))
        S.insert(Place::infinity());
    for (auto p : candidates) {
        Place v = Place::finite(p);
        if (all_nonsquare(v))
            S.insert(v);
    }
    return S;
}

// Smallest prime outside S that divides neither numerator nor denominator of a or b.
inline Place choose_w(const Rational &a, const Rational &b, const PlaceSet &S)
{
    for (std::uint64_t p = 2;; p = next_prime(p)) {
        Place v = Place::finite(p);
        if (S.contains(v))
            continue;
        bool divides = false;
        for (const Integer *z : {&a.get_num(), &a.get_den(), &b.get_num(), &b.get_den()})
            divides = divides || mpz_divisible_ui_p(z->get_mpz_t(), p);
        if (!divides)
            return v;
    }
}

// Which of a, b, ab, c are squares in Q_v.
inline std::array<bool, 4> local_coverage(const SquareClassData &d, const Place &v)
{
    return {is_local_square(d.a, v), is_local_square(d.b, v), is_local_square(d.a * d.b, v),
            is_local_square(d.c, v)};
}

inline bool covered_at(const SquareClassData &d, const Place &v)
{
    auto cov = local_coverage(d, v);
    return cov[0] || cov[1] || cov[2] || cov[3];
}

// Every SquareClassData invariant, re-derived from a and b.
inline std::vector<std::string> square_data_violations(const SquareClassData &d)
{
    std::vector<std::string> out;
    if (!classes_independent(d.a, d.b)) {
        out.push_back("a and b do not have independent square classes");
        return out;
    }
    if (compute_S(d.a, d.b) != d.S)
        out.push_back("S differs from the set of places where a, b, ab are all nonsquares");
    if (d.w.is_infinite()) {
        out.push_back("w must be a finite place");
        return out;
    }
    if (d.S.contains(d.w))
        out.push_back("w lies in S");
    if (d.c == 0) {
        out.push_back("c is zero");
        return out;
    }
    if (valuation(d.c, d.w) % 2 == 0)
        out.push_back("w(c) is even");
    for (const Place &v : d.S)
        if (!is_local_square(d.c, v))
            out.push_back("c is not a square at " + to_string(v));
    return out;
}

inline SquareClassData assemble(const Rational &a, const Rational &b)
{
    SquareClassData d;
    d.a = a;
    d.b = b;
    d.S = compute_S(a, b);
    d.w = choose_w(a, b, d.S);
    d.c = weak_approximation_c(d.S, d.w);
    if (auto bad = square_data_violations(d); !bad.empty())
        throw ArithmeticError("square class assembly failed: " + bad.front());
    return d;
}

} // namespace lgf

#endif // LGF_SQUARECLASSES_HPP
