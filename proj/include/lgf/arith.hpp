#ifndef LGF_ARITH_HPP
#define LGF_ARITH_HPP

#include "lgf/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace lgf {

// ---------------------------------------------------------------------------
// 64-bit number theory helpers

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t pollard_brent(std::uint64_t n)
{
    if (n % 2 == 0)
        return 2;
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
        std::uint64_t x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n)
            return d;
    }
}

} // namespace detail

// Deterministic Miller-Rabin; the first twelve prime bases are sufficient
// for every 64-bit input.
inline bool is_prime_u64(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0)
            return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

inline std::uint64_t next_prime(std::uint64_t n)
{
    std::uint64_t p = n + 1;
    while (!is_prime_u64(p))
        ++p;
    return p;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t bound)
{
    std::vector<std::uint64_t> out;
    if (bound < 2)
        return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i)
            composite[j] = true;
    }
    return out;
}

// Prime factorisation of |n| as prime -> exponent. Throws for cofactors
// above 64 bits that survive trial division; every integer this library
// factors is a small coefficient combination.
inline std::map<std::uint64_t, unsigned> factor(const Integer &n)
{
    if (n == 0)
        throw ArithmeticError("cannot factor zero");
    std::map<std::uint64_t, unsigned> out;
    Integer m = abs(n);
    for (std::uint64_t p = 2; p < 1000 && m > 1; ++p) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            m /= static_cast<unsigned long>(p);
            ++out[p];
        }
    }
    if (m == 1)
        return out;
    if (!fits_u64(m))
        throw ArithmeticError("cofactor too large to factor: " + to_string(m));
    std::vector<std::uint64_t> stack{to_u64(m)};
    while (!stack.empty()) {
        std::uint64_t v = stack.back();
        stack.pop_back();
        if (v == 1)
            continue;
        if (is_prime_u64(v)) {
            ++out[v];
            continue;
        }
        std::uint64_t d = detail::pollard_brent(v);
        stack.push_back(d);
        stack.push_back(v / d);
    }
    return out;
}

inline std::vector<std::uint64_t> prime_divisors(const Integer &n)
{
    std::vector<std::uint64_t> out;
    for (auto [p, e] : factor(n))
        out.push_back(p);
    return out;
}

// ---------------------------------------------------------------------------
// Places of Q

class Place {
public:
    static Place infinity() { return Place(); }

    static Place finite(std::uint64_t p)
    {
        if (!is_prime_u64(p))
            throw ArithmeticError("place must be prime: " + std::to_string(p));
        return Place(p);
    }

    bool is_infinite() const { return prime_ == 0; }
    bool is_finite() const { return prime_ != 0; }

    std::uint64_t prime() const
    {
        if (is_infinite())
            throw ArithmeticError("real place has no prime");
        return prime_;
    }

    // ∞ sorts before every prime.
    auto operator<=>(const Place &) const = default;

private:
    Place() = default;
    explicit Place(std::uint64_t p) : prime_(p) {}
    std::uint64_t prime_ = 0;
};

inline std::string to_string(const Place &v) { return v.is_infinite() ? "inf" : std::to_string(v.prime()); }

inline Place parse_place(const std::string &s)
{
    if (s == "inf")
        return Place::infinity();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ArithmeticError("malformed place: " + s);
    return Place::finite(std::stoull(s));
}

// Sorted, duplicate-free set of places.
class PlaceSet {
public:
    PlaceSet() = default;
    PlaceSet(std::initializer_list<Place> init) : places_(init) { normalize(); }
    explicit PlaceSet(std::vector<Place> places) : places_(std::move(places)) { normalize(); }

    bool contains(const Place &v) const { return std::binary_search(places_.begin(), places_.end(), v); }
    void insert(const Place &v)
    {
        places_.push_back(v);
        normalize();
    }
    void erase(const Place &v) { std::erase(places_, v); }

    std::size_t size() const { return places_.size(); }
    bool empty() const { return places_.empty(); }
    auto begin() const { return places_.begin(); }
    auto end() const { return places_.end(); }
    const std::vector<Place> &places() const { return places_; }

    bool operator==(const PlaceSet &) const = default;

private:
    void normalize()
    {
        std::sort(places_.begin(), places_.end());
        places_.erase(std::unique(places_.begin(), places_.end()), places_.end());
    }
    std::vector<Place> places_;
};

// ---------------------------------------------------------------------------
// Valuations and local squares

inline long valuation(const Integer &n, std::uint64_t p)
{
    if (n == 0)
        throw ArithmeticError("valuation of zero");
    Integer m = n;
    Integer pp = from_u64(p);
    return static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t()));
}

inline long valuation(const Rational &q, std::uint64_t p)
{
    if (q == 0)
        throw ArithmeticError("valuation of zero");
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

inline long valuation(const Rational &q, const Place &v) { return valuation(q, v.prime()); }

// q = p^valuation * unit, returned as the p-free numerator and denominator.
inline std::pair<Integer, Integer> unit_part(const Rational &q, std::uint64_t p)
{
    Integer num = q.get_num(), den = q.get_den(), pp = from_u64(p);
    mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pp.get_mpz_t());
    mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t());
    return {num, den};
}

// q ∈ Q_v^{×2}. Odd p: even valuation and unit part a residue mod p. p = 2:
// even valuation and unit part ≡ 1 (mod 8).
inline bool is_local_square(const Rational &q, const Place &v)
{
    if (q == 0)
        throw ArithmeticError("local square test of zero");
    if (v.is_infinite())
        return sgn(q) > 0;
    const std::uint64_t p = v.prime();
    if (valuation(q, p) % 2 != 0)
        return false;
    auto [num, den] = unit_part(q, p);
    // den^{-1} and den share a square class, so test num*den.
    Integer u = num * den;
    if (p == 2) {
        Integer r = u % 8;
        if (r < 0)
            r += 8;
        return r == 1;
    }
    Integer pp = from_u64(p);
    return mpz_legendre(u.get_mpz_t(), pp.get_mpz_t()) == 1;
}

// c ≠ 0 that is a square in Q_v for every v ∈ S and has odd valuation at w.
// Realised as c = w*t with t ≡ w^{-1} modulo 8 (if 2 ∈ S) and modulo every odd
// p ∈ S, t > 0, taking the smallest such t coprime to w.
inline Rational weak_approximation_c(const PlaceSet &S, const Place &w)
{
    if (w.is_infinite())
        throw ArithmeticError("w must be a finite place");
    if (S.contains(w))
        throw ArithmeticError("w must lie outside S");
    const Integer wz = from_u64(w.prime());

    Integer modulus = 1, residue = 0;
    auto impose = [&](const Integer &m) {
        Integer target;
        if (mpz_invert(target.get_mpz_t(), wz.get_mpz_t(), m.get_mpz_t()) == 0)
            throw ArithmeticError("w not invertible modulo " + to_string(m));
        // residue + modulus*k ≡ target (mod m)
        Integer inv_mod;
        mpz_invert(inv_mod.get_mpz_t(), modulus.get_mpz_t(), m.get_mpz_t());
        Integer k = ((target - residue) * inv_mod) % m;
        if (k < 0)
            k += m;
        residue += modulus * k;
        modulus *= m;
    };
    for (const Place &v : S) {
        if (v.is_infinite())
            continue;
        impose(v.prime() == 2 ? Integer(8) : from_u64(v.prime()));
    }
    Integer t = residue % modulus;
    if (t <= 0)
        t += modulus;
    while (gcd(t, wz) != 1)
        t += modulus;
    Rational c(wz * t);
    return c;
}

// Postcondition of weak_approximation_c, as an independent predicate.
inline bool weak_approximation_holds(const Rational &c, const PlaceSet &S, const Place &w)
{
    if (c == 0 || S.contains(w) || w.is_infinite())
        return false;
    if (valuation(c, w) % 2 == 0)
        return false;
    return std::all_of(S.begin(), S.end(), [&](const Place &v) { return is_local_square(c, v); });
}

} // namespace lgf

#endif // LGF_ARITH_HPP
