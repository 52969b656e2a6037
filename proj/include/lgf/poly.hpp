#ifndef LGF_POLY_HPP
#define LGF_POLY_HPP

#include "lgf/rational.hpp"

#include <utility>
#include <vector>

namespace lgf {

// Dense univariate polynomial over Q, coefficients stored low degree first
// with no trailing zeros (the zero polynomial is empty).
class Poly {
public:
    Poly() = default;
    Poly(const Rational &c)
    {
        if (c != 0)
            c_.push_back(c);
    }
    Poly(int c) : Poly(Rational(c)) {}
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly x() { return Poly(std::vector<Rational>{0, 1}); }
    // x - r
    static Poly linear(const Rational &r) { return Poly(std::vector<Rational>{-r, 1}); }
    static Poly monomial(const Rational &c, std::size_t k)
    {
        std::vector<Rational> v(k + 1);
        v[k] = c;
        return Poly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    // degree of zero is -1
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rational> &coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    Rational lc() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational operator()(const Rational &x) const
    {
        Rational r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            r = r * x + *it;
        return r;
    }

    Poly &operator+=(const Poly &o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly &operator-=(const Poly &o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly &b) { return a += b; }
    friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
    friend Poly operator-(Poly a)
    {
        for (auto &c : a.c_)
            c = -c;
        return a;
    }
    friend Poly operator*(const Poly &a, const Poly &b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0)
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    Poly &operator*=(const Poly &o) { return *this = *this * o; }
    friend Poly operator*(const Rational &s, Poly a)
    {
        if (s == 0)
            return {};
        for (auto &c : a.c_)
            c *= s;
        return a;
    }

    friend bool operator==(const Poly &, const Poly &) = default;

    // Euclidean division: a = q*b + r with deg r < deg b.
    friend std::pair<Poly, Poly> divmod(const Poly &a, const Poly &b)
    {
        if (b.is_zero())
            throw ArithmeticError("polynomial division by zero");
        Poly r = a;
        if (a.degree() < b.degree())
            return {Poly(), r};
        std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
        const Rational inv = 1 / b.lc();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            auto shift = static_cast<std::size_t>(r.degree() - b.degree());
            Rational f = r.lc() * inv;
            q[shift] = f;
            for (std::size_t i = 0; i < b.c_.size(); ++i)
                r.c_[i + shift] -= f * b.c_[i];
            r.trim();
        }
        return {Poly(std::move(q)), r};
    }
    friend Poly operator/(const Poly &a, const Poly &b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly &a, const Poly &b) { return divmod(a, b).second; }

    Poly monic() const
    {
        if (is_zero())
            return {};
        return Rational(1 / lc()) * *this;
    }

    Poly derivative() const
    {
        if (c_.size() <= 1)
            return {};
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            d[i - 1] = c_[i] * static_cast<long>(i);
        return Poly(std::move(d));
    }

    // p(x + s)
    Poly shift(const Rational &s) const
    {
        Poly r;
        const Poly lin(std::vector<Rational>{s, 1});
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            r = r * lin + Poly(*it);
        return r;
    }

    // multiplicity of r as a root
    long root_multiplicity(const Rational &r) const
    {
        if (is_zero())
            throw ArithmeticError("root multiplicity of the zero polynomial");
        Poly s = shift(r);
        long k = 0;
        while (s.coeff(static_cast<std::size_t>(k)) == 0)
            ++k;
        return k;
    }

    Poly pow(unsigned e) const
    {
        Poly r(1), b = *this;
        while (e) {
            if (e & 1)
                r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    // content-free integer representative (positive leading coefficient is not
    // enforced; sign is kept)
    std::vector<Integer> primitive_integer_coeffs() const
    {
        Integer l = 1, g = 0;
        for (auto &c : c_)
            l = lcm(l, c.get_den());
        std::vector<Integer> out;
        for (auto &c : c_) {
            Rational s = c * l;
            out.push_back(s.get_num());
            g = gcd(g, s.get_num());
        }
        if (g > 1)
            for (auto &z : out)
                z /= g;
        return out;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }
    std::vector<Rational> c_;
};

// Primitive remainder sequence: every remainder is rescaled to a content-free
// integer polynomial, which keeps coefficient growth in check.
inline Poly gcd(Poly a, Poly b)
{
    auto primitive = [](const Poly &p) {
        auto z = p.primitive_integer_coeffs();
        return Poly(std::vector<Rational>(z.begin(), z.end()));
    };
    a = primitive(a);
    b = primitive(b);
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = primitive(r);
    }
    return a.monic();
}

inline bool is_squarefree(const Poly &p)
{
    if (p.degree() <= 0)
        return true;
    return gcd(p, p.derivative()).degree() == 0;
}

inline bool coprime(const Poly &a, const Poly &b) { return gcd(a, b).degree() == 0; }

// Number of distinct real roots (Sturm's theorem), p nonzero.
inline int count_real_roots(const Poly &p)
{
    if (p.degree() <= 0)
        return 0;
    Poly q = p / gcd(p, p.derivative());
    std::vector<Poly> seq{q, q.derivative()};
    while (seq.back().degree() > 0) {
        Poly r = seq[seq.size() - 2] % seq.back();
        if (r.is_zero())
            break;
        seq.push_back(-r);
    }
    auto variations = [&](bool at_plus_inf) {
        int v = 0, last = 0;
        for (const Poly &s : seq) {
            if (s.is_zero())
                continue;
            int sign = sgn(s.lc());
            if (!at_plus_inf && s.degree() % 2 == 1)
                sign = -sign;
            if (last != 0 && sign != last)
                ++v;
            last = sign;
        }
        return v;
    };
    return variations(false) - variations(true);
}

} // namespace lgf

#endif // LGF_POLY_HPP
