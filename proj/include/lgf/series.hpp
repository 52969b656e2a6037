#ifndef LGF_SERIES_HPP
#define LGF_SERIES_HPP

#include "lgf/poly.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace lgf {

class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Truncated Laurent series  Σ c_i t^(val+i) + O(t^prec)  over Q.
// Either the leading stored coefficient is nonzero, or nothing is stored and
// the series is known to vanish up to t^prec. Exact series (polynomials) carry
// prec = kExact.
class Series {
public:
    static constexpr long kExact = 1L << 40;

    Series() : val_(kExact), prec_(kExact) {}

    static Series from_poly(const Poly &p)
    {
        Series s;
        s.val_ = 0;
        s.c_ = p.coeffs();
        s.prec_ = kExact;
        s.normalize();
        return s;
    }
    static Series constant(const Rational &c) { return from_poly(Poly(c)); }
    // t^k exactly
    static Series monomial(long k)
    {
        Series s;
        s.val_ = k;
        s.c_ = {Rational(1)};
        s.prec_ = kExact;
        return s;
    }
    // coefficients c_0 t^val + ... known up to t^prec
    static Series from_coeffs(long val, std::vector<Rational> c, long prec)
    {
        Series s;
        s.val_ = val;
        s.c_ = std::move(c);
        s.prec_ = prec;
        s.normalize();
        return s;
    }

    bool is_exact() const { return prec_ >= kExact; }
    long precision() const { return prec_; }
    bool known_nonzero() const { return !c_.empty(); }

    long valuation() const
    {
        if (c_.empty())
            throw PrecisionError("series vanishes to the available precision");
        return val_;
    }
    Rational leading() const
    {
        if (c_.empty())
            throw PrecisionError("series vanishes to the available precision");
        return c_.front();
    }
    Rational coeff(long k) const
    {
        if (k >= prec_)
            throw PrecisionError("coefficient beyond series precision");
        if (c_.empty() || k < val_ || k - val_ >= static_cast<long>(c_.size()))
            return 0;
        return c_[static_cast<std::size_t>(k - val_)];
    }

    Series truncated(long prec) const
    {
        Series s = *this;
        s.prec_ = std::min(prec_, prec);
        if (!s.c_.empty()) {
            long keep = std::max(0L, s.prec_ - s.val_);
            if (static_cast<long>(s.c_.size()) > keep)
                s.c_.resize(static_cast<std::size_t>(keep));
        }
        s.normalize();
        return s;
    }

    friend Series operator+(const Series &a, const Series &b)
    {
        const long prec = std::min(a.prec_, b.prec_);
        if (a.c_.empty() && b.c_.empty())
            return zero_to(prec);
        const long lo = std::min(a.c_.empty() ? prec : a.val_, b.c_.empty() ? prec : b.val_);
        long hi = 0;
        for (const Series *s : {&a, &b})
            if (!s->c_.empty())
                hi = std::max(hi, s->val_ + static_cast<long>(s->c_.size()));
        hi = std::min(hi, prec);
        Series r;
        r.val_ = lo;
        r.prec_ = prec;
        if (hi > lo) {
            r.c_.assign(static_cast<std::size_t>(hi - lo), Rational(0));
            for (const Series *s : {&a, &b})
                for (std::size_t i = 0; i < s->c_.size(); ++i) {
                    long k = s->val_ + static_cast<long>(i);
                    if (k < hi)
                        r.c_[static_cast<std::size_t>(k - lo)] += s->c_[i];
                }
        }
        r.normalize();
        return r;
    }
    friend Series operator-(const Series &a) { return a.scaled(Rational(-1)); }
    friend Series operator-(const Series &a, const Series &b) { return a + (-b); }

    Series scaled(const Rational &s) const
    {
        if (s == 0)
            return zero_to(prec_);
        Series r = *this;
        for (auto &c : r.c_)
            c *= s;
        return r;
    }

    friend Series operator*(const Series &a, const Series &b)
    {
        if ((a.c_.empty() && a.is_exact()) || (b.c_.empty() && b.is_exact()))
            return Series();
        const long va = a.c_.empty() ? a.prec_ : a.val_;
        const long vb = b.c_.empty() ? b.prec_ : b.val_;
        long prec = std::min(sat_add(va, b.prec_), sat_add(vb, a.prec_));
        prec = std::min(prec, kExact);
        if (a.c_.empty() || b.c_.empty())
            return zero_to(prec);
        Series r;
        r.val_ = a.val_ + b.val_;
        r.prec_ = prec;
        long len = std::min<long>(static_cast<long>(a.c_.size() + b.c_.size() - 1), prec - r.val_);
        if (len > 0) {
            r.c_.assign(static_cast<std::size_t>(len), Rational(0));
            for (std::size_t i = 0; i < a.c_.size(); ++i)
                for (std::size_t j = 0; j < b.c_.size() && static_cast<long>(i + j) < len; ++j)
                    r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        r.normalize();
        return r;
    }

    // 1/a; exact inputs are expanded to `limit` relative terms.
    Series inverse(long limit = 64) const
    {
        if (c_.empty())
            throw PrecisionError("inverse of a series not known to be nonzero");
        long rel = is_exact() ? limit : prec_ - val_;
        Series r;
        r.val_ = -val_;
        r.prec_ = -val_ + rel;
        r.c_.assign(static_cast<std::size_t>(rel), Rational(0));
        const Rational inv0 = 1 / c_[0];
        for (long n = 0; n < rel; ++n) {
            Rational acc = n == 0 ? Rational(1) : Rational(0);
            for (long k = 1; k <= n && k < static_cast<long>(c_.size()); ++k)
                acc -= c_[static_cast<std::size_t>(k)] * r.c_[static_cast<std::size_t>(n - k)];
            r.c_[static_cast<std::size_t>(n)] = acc * inv0;
        }
        r.normalize();
        return r;
    }

    // Square root with leading coefficient `root0` (root0² must equal the
    // leading coefficient); valuation must be even.
    Series sqrt(const Rational &root0, long limit = 64) const
    {
        if (c_.empty())
            throw PrecisionError("sqrt of a series not known to be nonzero");
        if (val_ % 2 != 0)
            throw ArithmeticError("series of odd valuation has no square root");
        if (root0 * root0 != c_[0] || root0 == 0)
            throw ArithmeticError("bad leading root for series sqrt");
        long rel = is_exact() ? limit : prec_ - val_;
        Series r;
        r.val_ = val_ / 2;
        r.prec_ = r.val_ + rel;
        r.c_.assign(static_cast<std::size_t>(rel), Rational(0));
        r.c_[0] = root0;
        const Rational inv = 1 / (2 * root0);
        for (long n = 1; n < rel; ++n) {
            Rational acc = n < static_cast<long>(c_.size()) ? c_[static_cast<std::size_t>(n)] : Rational(0);
            for (long k = 1; k < n; ++k)
                acc -= r.c_[static_cast<std::size_t>(k)] * r.c_[static_cast<std::size_t>(n - k)];
            r.c_[static_cast<std::size_t>(n)] = acc * inv;
        }
        r.normalize();
        return r;
    }

    // p(s) by Horner's rule
    static Series compose(const Poly &p, const Series &s)
    {
        Series r;
        for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
            r = r * s + constant(*it);
        return r;
    }

private:
    static long sat_add(long a, long b) { return std::min(a + b, 4 * kExact); }
    static Series zero_to(long prec)
    {
        Series s;
        s.val_ = prec;
        s.prec_ = prec;
        return s;
    }
    void normalize()
    {
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead] == 0)
            ++lead;
        if (lead == c_.size()) {
            c_.clear();
            val_ = prec_;
            return;
        }
        if (lead > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
            val_ += static_cast<long>(lead);
        }
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
        if (val_ + static_cast<long>(c_.size()) > prec_)
            c_.resize(static_cast<std::size_t>(std::max(0L, prec_ - val_)));
    }

    long val_;
    std::vector<Rational> c_;
    long prec_;
};

} // namespace lgf

#endif // LGF_SERIES_HPP
