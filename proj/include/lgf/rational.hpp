#ifndef LGF_RATIONAL_HPP
#define LGF_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lgf {

using Integer = mpz_class;

// Exact element of Q. gmp keeps mpq_class canonical (lowest terms, positive
// denominator, zero as 0/1) through every arithmetic operation; the only
// way to obtain a non-canonical value is raw string construction, which is
// why parse_rational() exists.
using Rational = mpq_class;

class ArithmeticError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw ArithmeticError("empty rational literal");
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw ArithmeticError("malformed rational literal: " + s);
    if (q.get_den() == 0)
        throw ArithmeticError("zero denominator in: " + s);
    q.canonicalize();
    return q;
}

// "num/den", den omitted when 1.
inline std::string to_string(const Rational &q) { return q.get_str(10); }
inline std::string to_string(const Integer &z) { return z.get_str(10); }

inline bool is_integer(const Rational &q) { return q.get_den() == 1; }

inline Integer isqrt(const Integer &n)
{
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Integer &n)
{
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// q ∈ Q^{×2} ∪ {0}
inline bool is_rational_square(const Rational &q)
{
    return is_perfect_square(q.get_num()) && is_perfect_square(q.get_den());
}

inline Rational rational_sqrt(const Rational &q)
{
    if (!is_rational_square(q))
        throw ArithmeticError("not a rational square: " + to_string(q));
    return Rational(isqrt(q.get_num()), isqrt(q.get_den()));
}

inline Rational rpow(const Rational &base, unsigned long e)
{
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    return r;
}

inline bool fits_u64(const Integer &z) { return sgn(z) >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const Integer &z)
{
    if (!fits_u64(z))
        throw ArithmeticError("integer does not fit in 64 bits: " + to_string(z));
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, z.get_mpz_t());
    return out;
}

inline Integer from_u64(std::uint64_t v)
{
    Integer z;
    mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return z;
}

} // namespace lgf

#endif // LGF_RATIONAL_HPP
