#ifndef LGF_FUNCTION_FIELD_HPP
#define LGF_FUNCTION_FIELD_HPP

#include "lgf/elliptic.hpp"
#include "lgf/linalg.hpp"
#include "lgf/series.hpp"

#include <map>
#include <variant>

namespace lgf {

class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class UnsupportedShape : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Level 0: (p(x) + q(x)·y) / d(x) on the base curve.
//
// Canonical form: d monic, gcd(p, q, d) = 1, zero is 0/1. Since {1, y} is a
// basis of Q(E) over Q(x) this form is unique, so equality is structural.

class BaseFunction {
public:
    BaseFunction() : d_(1) {}
    BaseFunction(Poly p, Poly q = Poly(), Poly d = Poly(1)) : p_(std::move(p)), q_(std::move(q)), d_(std::move(d))
    {
        canonicalize();
    }

    static BaseFunction constant(const Rational &c) { return BaseFunction(Poly(c)); }
    static BaseFunction x() { return BaseFunction(Poly::x()); }
    static BaseFunction y() { return BaseFunction(Poly(), Poly(1)); }

    const Poly &p() const { return p_; }
    const Poly &q() const { return q_; }
    const Poly &d() const { return d_; }
    bool is_zero() const { return p_.is_zero() && q_.is_zero(); }

    friend bool operator==(const BaseFunction &, const BaseFunction &) = default;

    friend BaseFunction operator+(const BaseFunction &f, const BaseFunction &g)
    {
        if (f.d_ == g.d_)
            return BaseFunction(f.p_ + g.p_, f.q_ + g.q_, f.d_);
        return BaseFunction(f.p_ * g.d_ + g.p_ * f.d_, f.q_ * g.d_ + g.q_ * f.d_, f.d_ * g.d_);
    }
    friend BaseFunction operator-(const BaseFunction &f) { return BaseFunction(-f.p_, -f.q_, f.d_); }
    friend BaseFunction operator-(const BaseFunction &f, const BaseFunction &g) { return f + (-g); }
    BaseFunction scaled(const Rational &c) const { return BaseFunction(c * p_, c * q_, d_); }

    // conjugate under y -> -y
    BaseFunction conjugate() const { return BaseFunction(p_, -q_, d_); }

private:
    void canonicalize()
    {
        if (d_.is_zero())
            throw ArithmeticError("zero denominator in function");
        if (p_.is_zero() && q_.is_zero()) {
            d_ = Poly(1);
            return;
        }
        Poly g = gcd(gcd(p_, q_), d_);
        if (g.degree() > 0) {
            p_ = p_ / g;
            q_ = q_ / g;
            d_ = d_ / g;
        }
        Rational l = d_.lc();
        if (l != 1) {
            Rational inv = 1 / l;
            p_ = inv * p_;
            q_ = inv * q_;
            d_ = inv * d_;
        }
    }

    Poly p_, q_, d_;
};

// ---------------------------------------------------------------------------
// Tower elements. At level ℓ an element is g + u_ℓ·h with g, h of level ℓ−1;
// flattened, it is Σ_S u^S·c_S over subsets S ⊆ {1..ℓ} with base-level
// coefficients c_S (bit j−1 of the index marks u_j). {u^S} is a basis of the
// level-ℓ field over the base field.

struct FunctionElement {
    std::vector<BaseFunction> comps{BaseFunction()};

    FunctionElement() = default;
    FunctionElement(BaseFunction f) : comps{std::move(f)} {}
    explicit FunctionElement(std::vector<BaseFunction> c) : comps(std::move(c))
    {
        if (comps.empty() || !std::has_single_bit(comps.size()))
            throw ArithmeticError("tower element needs 2^level components");
    }

    std::size_t level() const { return static_cast<std::size_t>(std::countr_zero(comps.size())); }
    bool is_zero() const
    {
        return std::all_of(comps.begin(), comps.end(), [](const BaseFunction &c) { return c.is_zero(); });
    }
    // nonzero only in the u^∅ slot
    bool is_base() const
    {
        return std::all_of(comps.begin() + 1, comps.end(), [](const BaseFunction &c) { return c.is_zero(); });
    }
    FunctionElement lifted(std::size_t level) const
    {
        if (level < this->level())
            throw ArithmeticError("cannot lower the level of a tower element");
        FunctionElement r = *this;
        r.comps.resize(std::size_t{1} << level);
        return r;
    }
    // g and h of g + u_ℓ·h
    std::pair<FunctionElement, FunctionElement> split() const
    {
        std::size_t half = comps.size() / 2;
        return {FunctionElement(std::vector<BaseFunction>(comps.begin(), comps.begin() + static_cast<long>(half))),
                FunctionElement(std::vector<BaseFunction>(comps.begin() + static_cast<long>(half), comps.end()))};
    }
    static FunctionElement join(const FunctionElement &g, const FunctionElement &h)
    {
        std::vector<BaseFunction> c = g.comps;
        c.insert(c.end(), h.comps.begin(), h.comps.end());
        return FunctionElement(std::move(c));
    }

    friend bool operator==(const FunctionElement &, const FunctionElement &) = default;
};

// A rational point of a tower level: base point plus the values of u_1..u_ℓ.
struct TowerPoint {
    CurvePoint base;
    std::vector<Rational> coords;

    std::size_t level() const { return coords.size(); }
    bool operator==(const TowerPoint &) const = default;
    friend bool operator<(const TowerPoint &a, const TowerPoint &b)
    {
        if (!(a.base == b.base))
            return a.base < b.base;
        return a.coords < b.coords;
    }
};

inline std::string to_string(const TowerPoint &P)
{
    std::string s = to_string(P.base);
    for (const auto &c : P.coords)
        s += (s.back() == ')' || s == "inf" ? "|" : ",") + to_string(c);
    return s;
}

// The points of a tower level lying over a degree-2 base point.
struct LiftedPoint {
    QuadraticPoint base;
    std::size_t level = 0;
    bool operator==(const LiftedPoint &) const = default;
};

using ClosedPoint = std::variant<CurvePoint, QuadraticPoint, TowerPoint, LiftedPoint>;

inline long closed_point_degree(const ClosedPoint &P)
{
    return std::holds_alternative<QuadraticPoint>(P) ? 2 : std::holds_alternative<LiftedPoint>(P) ? -1 : 1;
}

// ---------------------------------------------------------------------------
// Level-0 divisors supported on degree-2 points and ∞.

class Divisor {
public:
    Divisor() = default;

    Divisor &add(const QuadraticPoint &P, long mult)
    {
        for (auto it = terms_.begin(); it != terms_.end(); ++it) {
            if (it->first.x0 == P.x0) {
                it->second += mult;
                if (it->second == 0)
                    terms_.erase(it);
                return *this;
            }
        }
        if (mult != 0) {
            terms_.emplace_back(P, mult);
            std::sort(terms_.begin(), terms_.end(),
                      [](const auto &l, const auto &r) { return l.first.x0 < r.first.x0; });
        }
        return *this;
    }
    Divisor &add_infinity(long mult)
    {
        infinity_ += mult;
        return *this;
    }
    // generic entry point; rational affine points are outside the supported shapes
    Divisor &add(const ClosedPoint &P, long mult)
    {
        if (auto *q = std::get_if<QuadraticPoint>(&P))
            return add(*q, mult);
        if (auto *c = std::get_if<CurvePoint>(&P); c && c->is_infinity())
            return add_infinity(mult);
        throw UnsupportedShape("divisors are supported on degree-2 points and infinity only");
    }

    friend Divisor operator+(Divisor a, const Divisor &b)
    {
        for (const auto &[P, m] : b.terms_)
            a.add(P, m);
        a.infinity_ += b.infinity_;
        return a;
    }

    const std::vector<std::pair<QuadraticPoint, long>> &quadratic_terms() const { return terms_; }
    long at_infinity() const { return infinity_; }
    long multiplicity(const QuadraticPoint &P) const
    {
        for (const auto &[Q, m] : terms_)
            if (Q.x0 == P.x0)
                return m;
        return 0;
    }
    long degree() const
    {
        long d = infinity_;
        for (const auto &[P, m] : terms_)
            d += 2 * m;
        return d;
    }
    bool operator==(const Divisor &) const = default;

private:
    std::vector<std::pair<QuadraticPoint, long>> terms_;
    long infinity_ = 0;
};

// ---------------------------------------------------------------------------

enum class CoverRole { doubling, final_cover };

struct Cover {
    FunctionElement f;      // u² = f, f at the level below the cover
    QuadraticPoint P;       // base point whose lift carries an odd-order pole of f
    long pole_order = 0;    // −order_at(f, lift of P)
    CoverRole role = CoverRole::doubling;
};

namespace detail {

inline long root_mult_or_inf(const Poly &p, const Rational &r)
{
    return p.is_zero() ? Series::kExact : p.root_multiplicity(r);
}

inline long ord_infinity_numerator(const Poly &p, const Poly &q)
{
    long o = Series::kExact;
    if (!p.is_zero())
        o = std::min(o, -2 * p.degree());
    if (!q.is_zero())
        o = std::min(o, -2 * q.degree() - 3);
    return o;
}

} // namespace detail

// A curve and a chain of double covers over it; owns the field arithmetic of
// every level. Level ℓ is Q(E)(u_1, ..., u_ℓ) with u_j² = covers[j−1].f.
class Tower {
public:
    Tower() = default;
    explicit Tower(WeierstrassCurve E) : curve_(std::move(E)) {}

    const WeierstrassCurve &curve() const { return curve_; }
    const std::vector<Cover> &covers() const { return covers_; }
    std::size_t level() const { return covers_.size(); }

    // Appends a cover without checks; callers validate (see forge/verify).
    void push_cover(Cover c)
    {
        if (c.f.level() > covers_.size())
            throw ArithmeticError("cover function lives above the current top level");
        c.f = c.f.lifted(covers_.size());
        covers_.push_back(std::move(c));
    }
    Tower truncated(std::size_t level) const
    {
        Tower t(curve_);
        t.covers_.assign(covers_.begin(), covers_.begin() + static_cast<long>(level));
        return t;
    }

    // ---- base arithmetic ----

    BaseFunction mul(const BaseFunction &f, const BaseFunction &g) const
    {
        const Poly F = curve_.rhs_poly();
        return BaseFunction(f.p() * g.p() + f.q() * g.q() * F, f.p() * g.q() + f.q() * g.p(), f.d() * g.d());
    }
    // (p² − q²F)/d², the norm to Q(x), as numerator polynomial with denominator d²
    Poly norm_numerator(const BaseFunction &f) const { return f.p() * f.p() - f.q() * f.q() * curve_.rhs_poly(); }

    BaseFunction inverse(const BaseFunction &f) const
    {
        if (f.is_zero())
            throw ArithmeticError("inverse of zero function");
        Poly N = norm_numerator(f);
        return BaseFunction(f.p() * f.d(), -(f.q() * f.d()), N);
    }

    // ---- tower arithmetic ----

    FunctionElement add(const FunctionElement &a, const FunctionElement &b) const
    {
        std::size_t L = std::max(a.level(), b.level());
        FunctionElement x = a.lifted(L), y = b.lifted(L);
        for (std::size_t i = 0; i < x.comps.size(); ++i)
            x.comps[i] = x.comps[i] + y.comps[i];
        return x;
    }
    FunctionElement sub(const FunctionElement &a, const FunctionElement &b) const { return add(a, scale(b, -1)); }
    FunctionElement scale(const FunctionElement &a, const Rational &c) const
    {
        FunctionElement r = a;
        for (auto &comp : r.comps)
            comp = comp.scaled(c);
        return r;
    }

    FunctionElement mul(const FunctionElement &a, const FunctionElement &b) const
    {
        std::size_t L = std::max(a.level(), b.level());
        check_level(L);
        if (L == 0)
            return FunctionElement(mul(a.comps[0], b.comps[0]));
        auto [g1, h1] = a.lifted(L).split();
        auto [g2, h2] = b.lifted(L).split();
        const FunctionElement &f = covers_[L - 1].f;
        FunctionElement g = add(mul(g1, g2), mul(f, mul(h1, h2)));
        FunctionElement h = add(mul(g1, h2), mul(h1, g2));
        return FunctionElement::join(g.lifted(L - 1), h.lifted(L - 1));
    }

    FunctionElement inverse(const FunctionElement &a) const
    {
        if (a.is_zero())
            throw ArithmeticError("inverse of zero function");
        std::size_t L = a.level();
        check_level(L);
        if (L == 0)
            return FunctionElement(inverse(a.comps[0]));
        auto [g, h] = a.split();
        const FunctionElement &f = covers_[L - 1].f;
        FunctionElement n = sub(mul(g, g), mul(f, mul(h, h))); // norm to level L−1
        FunctionElement ninv = inverse(n);
        return FunctionElement::join(mul(g, ninv).lifted(L - 1), scale(mul(h, ninv), -1).lifted(L - 1));
    }

    // u_ℓ as an element of level ℓ
    FunctionElement generator(std::size_t l) const
    {
        check_level(l);
        FunctionElement r = FunctionElement().lifted(l);
        r.comps[std::size_t{1} << (l - 1)] = BaseFunction::constant(1);
        return r;
    }

    // ---- local expansions ----

    // (x(t), y(t)) in a uniformizer t at a rational base point, to absolute
    // precision about K.
    std::pair<Series, Series> local_coordinates(const CurvePoint &z, long K) const
    {
        const Rational &a = curve_.a, &b = curve_.b;
        if (z.is_infinity()) {
            // t = −x/y, w = −1/y satisfies w = t³ + a t² w + b t w²
            Series t = Series::monomial(1);
            Series w = Series::from_coeffs(0, {}, K);
            for (long i = 0; i < K; ++i)
                w = (Series::monomial(3) + (Series::monomial(2) * w).scaled(a) + (t * w * w).scaled(b)).truncated(K);
            Series winv = w.inverse();
            return {t * winv, -winv};
        }
        const Rational &x1 = z.x(), &y1 = z.y();
        if (y1 != 0) {
            // t = x − x1
            Series X = Series::from_poly(Poly(std::vector<Rational>{x1, 1}));
            Series Fx = Series::from_poly(curve_.rhs_poly().shift(x1)).truncated(K);
            return {X, Fx.sqrt(y1)};
        }
        // 2-torsion: t = y, x = x1 + s with c1 s + c2 s² + s³ = t²
        Poly Fs = curve_.rhs_poly().shift(x1);
        const Rational c1 = Fs.coeff(1), c2 = Fs.coeff(2);
        Series s = Series::from_coeffs(0, {}, K);
        const Series t2 = Series::monomial(2);
        for (long i = 0; i < K; ++i)
            s = ((t2 - (s * s).scaled(c2) - s * s * s).scaled(1 / c1)).truncated(K);
        return {s + Series::constant(x1), Series::monomial(1)};
    }

    Series series(const BaseFunction &f, const CurvePoint &z, long K) const
    {
        auto [X, Y] = local_coordinates(z, K);
        Series num = Series::compose(f.p(), X) + Series::compose(f.q(), X) * Y;
        Series den = Series::compose(f.d(), X);
        if (!den.known_nonzero())
            throw PrecisionError("denominator vanishes to working precision");
        return num * den.inverse(K);
    }

    // Expansion of a tower element at an unramified rational tower point,
    // in the base uniformizer.
    Series series(const FunctionElement &F, const TowerPoint &P, long K) const
    {
        std::size_t L = F.level();
        if (P.level() < L)
            throw ArithmeticError("tower point below the level of the function");
        auto units = unit_series(P, L, K);
        Series acc;
        for (std::size_t S = 0; S < F.comps.size(); ++S) {
            if (F.comps[S].is_zero())
                continue;
            acc = acc + series(F.comps[S], P.base, K) * units[S];
        }
        return acc;
    }

    // u^S expansions at P for all S ⊆ {1..L}
    std::vector<Series> unit_series(const TowerPoint &P, std::size_t L, long K) const
    {
        std::vector<Series> u(std::size_t{1} << L);
        u[0] = Series::constant(1);
        for (std::size_t j = 1; j <= L; ++j) {
            const Rational &c = P.coords[j - 1];
            if (c == 0)
                throw ArithmeticError("series at a ramified tower point is not supported");
            TowerPoint below{P.base, std::vector<Rational>(P.coords.begin(), P.coords.begin() + static_cast<long>(j - 1))};
            Series fj = series(covers_[j - 1].f, below, K);
            if (!fj.known_nonzero() || fj.valuation() != 0 || fj.leading() != c * c)
                throw ArithmeticError("tower point coordinates do not match the cover");
            Series uj = fj.sqrt(c);
            std::size_t bit = std::size_t{1} << (j - 1);
            for (std::size_t S = 0; S < bit; ++S)
                u[S | bit] = u[S] * uj;
        }
        return u;
    }

    // Expansion with precision raised until the leading term is visible or
    // the absolute precision reaches `need`. Terminates for nonzero input.
    template <class Fn, class Pt>
    Series expand(const Fn &f, const Pt &P, long need) const
    {
        for (long K = need < 48 ? std::max<long>(need + 8, 16) : 16;; K *= 2) {
            Series s = series(f, P, K);
            if (s.known_nonzero() || s.precision() >= need)
                return s;
            if (K > (1L << 14))
                throw PrecisionError("expansion did not stabilise");
        }
    }

    // ---- evaluation ----

    Rational evaluate(const BaseFunction &f, const CurvePoint &z) const
    {
        if (z.is_infinity()) {
            long on = detail::ord_infinity_numerator(f.p(), f.q());
            long od = -2 * f.d().degree();
            if (on == Series::kExact)
                return 0;
            long o = on - od;
            if (o < 0)
                throw PoleError("pole at infinity");
            if (o > 0)
                return 0;
            return f.p().lc() / f.d().lc();
        }
        Rational dz = f.d()(z.x());
        if (dz != 0)
            return (f.p()(z.x()) + f.q()(z.x()) * z.y()) / dz;
        return value_from_series(expand(f, z, 1));
    }

    Rational evaluate(const FunctionElement &F, const TowerPoint &P) const
    {
        std::size_t L = F.level();
        if (P.level() < L)
            throw ArithmeticError("tower point below the level of the function");
        Rational acc = 0;
        for (std::size_t S = 0; S < F.comps.size(); ++S) {
            if (F.comps[S].is_zero())
                continue;
            Rational us = 1;
            for (std::size_t j = 0; j < L; ++j)
                if (S >> j & 1)
                    us *= P.coords[j];
            try {
                acc += us * evaluate(F.comps[S], P.base);
            } catch (const PoleError &) {
                // poles of components may cancel
                return value_from_series(expand(F, P, 1));
            }
        }
        return acc;
    }

    // ---- orders ----

    long order_at(const BaseFunction &f, const QuadraticPoint &P) const
    {
        if (f.is_zero())
            throw ArithmeticError("order of the zero function");
        check_quadratic(P);
        // at a degree-2 point x − x0 is a uniformizer and ord(p + q y) = min(ord p, ord q)
        return std::min(detail::root_mult_or_inf(f.p(), P.x0), detail::root_mult_or_inf(f.q(), P.x0)) -
               f.d().root_multiplicity(P.x0);
    }

    long order_at(const BaseFunction &f, const CurvePoint &z) const
    {
        if (f.is_zero())
            throw ArithmeticError("order of the zero function");
        if (!on_curve(curve_, z))
            throw ArithmeticError("point not on curve");
        return expand(f, z, Series::kExact).valuation();
    }

    long order_at(const FunctionElement &F, const TowerPoint &P) const
    {
        if (F.is_zero())
            throw ArithmeticError("order of the zero function");
        return expand(F, P, Series::kExact).valuation();
    }

    // Order at the points above a degree-2 base point. Requires every cover up
    // to the level to be a unit there (so the fibre is unramified and every u^S
    // a unit); the result is then the minimum component order when attained by
    // a single component, and is the same at every point of the fibre.
    long order_at(const FunctionElement &F, const LiftedPoint &P) const
    {
        if (F.is_zero())
            throw ArithmeticError("order of the zero function");
        std::size_t L = std::max(F.level(), P.level);
        for (std::size_t j = 1; j <= L; ++j)
            if (order_at(covers_[j - 1].f, LiftedPoint{P.base, j - 1}) != 0)
                throw UnsupportedShape("cover ramified above the lifted point");
        long best = Series::kExact;
        int attained = 0;
        for (const auto &c : F.comps) {
            if (c.is_zero())
                continue;
            long o = order_at(c, P.base);
            if (o < best) {
                best = o;
                attained = 1;
            } else if (o == best) {
                ++attained;
            }
        }
        if (attained != 1)
            throw UnsupportedShape("order above a degree-2 point is not determined by a unique component");
        return best;
    }

    long order_at(const FunctionElement &F, const ClosedPoint &P) const
    {
        return std::visit(
            [&](const auto &pt) -> long {
                using T = std::decay_t<decltype(pt)>;
                if constexpr (std::is_same_v<T, CurvePoint>) {
                    if (!F.is_base())
                        throw ArithmeticError("base point given for a tower function");
                    return order_at(F.comps[0], pt);
                } else if constexpr (std::is_same_v<T, QuadraticPoint>) {
                    if (!F.is_base())
                        return order_at(F, LiftedPoint{pt, F.level()});
                    return order_at(F.comps[0], pt);
                } else {
                    return order_at(F, pt);
                }
            },
            P);
    }

    // ---- Riemann-Roch ----

    // L(m·∞): x^i y^j with 2i + 3j ≤ m, j ≤ 1, by increasing pole order.
    static std::vector<BaseFunction> rr_basis_infinity(long m)
    {
        std::vector<BaseFunction> out;
        for (long k = 0; k <= m; ++k) {
            if (k == 1)
                continue;
            if (k % 2 == 0)
                out.emplace_back(Poly::monomial(1, static_cast<std::size_t>(k / 2)));
            else
                out.emplace_back(Poly(), Poly::monomial(1, static_cast<std::size_t>((k - 3) / 2)));
        }
        return out;
    }

    // Basis of L(D) for D = Σ m_i P_i + r·∞ (P_i of degree 2):
    // h = (p + q y) / Π_{m_i>0} (x − x_i)^{m_i}, with (x − x_j)^{−m_j} | p, q for
    // m_j < 0 and deg p ≤ Σ⁺m + ⌊r/2⌋, deg q ≤ Σ⁺m + ⌊(r−3)/2⌋ from the
    // condition at ∞. Ordered: p-part by degree, then q-part by degree.
    std::vector<BaseFunction> rr_space(const Divisor &D) const
    {
        Poly den(1), zero_factor(1);
        long positive = 0;
        for (const auto &[P, m] : D.quadratic_terms()) {
            check_quadratic(P);
            if (m > 0) {
                den *= Poly::linear(P.x0).pow(static_cast<unsigned>(m));
                positive += m;
            } else {
                zero_factor *= Poly::linear(P.x0).pow(static_cast<unsigned>(-m));
            }
        }
        const long r = D.at_infinity();
        auto floor_div2 = [](long v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); };
        const long max_p = positive + floor_div2(r) - zero_factor.degree();
        const long max_q = positive + floor_div2(r - 3) - zero_factor.degree();
        std::vector<BaseFunction> out;
        for (long k = 0; k <= max_p; ++k)
            out.emplace_back(zero_factor * Poly::monomial(1, static_cast<std::size_t>(k)), Poly(), den);
        for (long k = 0; k <= max_q; ++k)
            out.emplace_back(Poly(), zero_factor * Poly::monomial(1, static_cast<std::size_t>(k)), den);
        return out;
    }

    // ⌊div(f)/2⌋ for a cover function that is a pullback of a base function
    // whose zeros are all simple, whose only finite poles are at its
    // ramification point, and which is a unit at ∞.
    Divisor half_floor_divisor(const Cover &c) const
    {
        if (!c.f.is_base())
            throw UnsupportedShape("half divisor needs a cover function pulled back from the base");
        const BaseFunction &f = c.f.comps[0];
        auto why = simple_zero_violation(f);
        if (!why.empty())
            throw UnsupportedShape(why);
        if (!(f.d() == Poly::linear(c.P.x0).pow(static_cast<unsigned>(f.d().degree()))))
            throw UnsupportedShape("cover function has poles away from its ramification point");
        long o = order_at(f, c.P);
        Divisor D;
        if (o < 0)
            D.add(c.P, -((-o + 1) / 2));
        else
            D.add(c.P, o / 2);
        return D;
    }

    // Empty when every zero of f is simple, no zero lies at a 2-torsion point,
    // and f is a unit at ∞; otherwise the reason.
    std::string simple_zero_violation(const BaseFunction &f) const
    {
        if (f.is_zero())
            return "zero function";
        Poly N = norm_numerator(f);
        // common factors with d are poles, not zeros
        Poly g = gcd(N, f.d());
        while (g.degree() > 0) {
            N = N / g;
            g = gcd(N, f.d());
        }
        if (!is_squarefree(N))
            return "cover function has a repeated zero";
        if (!coprime(N, curve_.rhs_poly()))
            return "cover function vanishes at a 2-torsion point";
        long on = detail::ord_infinity_numerator(f.p(), f.q());
        if (on + 2 * f.d().degree() != 0)
            return "cover function has a zero or pole at infinity";
        return {};
    }

    // Poles and zeros of two pulled-back cover functions lie over disjoint
    // x-values (and neither meets the other's ramification point).
    bool supports_disjoint(const Cover &a, const Cover &b) const
    {
        const BaseFunction &f = a.f.comps[0], &g = b.f.comps[0];
        Poly Nf = norm_numerator(f), Ng = norm_numerator(g);
        return a.P.x0 != b.P.x0 && coprime(Nf, Ng) && Nf(b.P.x0) != 0 && Ng(a.P.x0) != 0;
    }

    // L(π*D0) at `level`: L(D0) ⊕ u_ℓ·L(D0 + ⌊div f_ℓ/2⌋), recursively.
    // Requires pulled-back covers with simple zeros and pairwise disjoint
    // supports (then ⌊·/2⌋ commutes with pullback).
    std::vector<FunctionElement> rr_space_tower(std::size_t level, const Divisor &D0) const
    {
        check_level(level);
        if (level == 0) {
            std::vector<FunctionElement> out;
            for (auto &b : rr_space(D0))
                out.emplace_back(b);
            return out;
        }
        const Cover &c = covers_[level - 1];
        for (std::size_t j = 0; j + 1 < level; ++j)
            if (!supports_disjoint(covers_[j], c))
                throw UnsupportedShape("cover supports overlap");
        std::vector<FunctionElement> out;
        for (auto &g : rr_space_tower(level - 1, D0))
            out.push_back(g.lifted(level));
        const FunctionElement u = generator(level);
        for (auto &h : rr_space_tower(level - 1, D0 + half_floor_divisor(c)))
            out.push_back(mul(u, h.lifted(level)));
        return out;
    }

    void check_quadratic(const QuadraticPoint &P) const
    {
        if (P.fiber != curve_.rhs(P.x0) || P.fiber == 0 || is_rational_square(P.fiber))
            throw ArithmeticError("not a degree-2 point of the curve");
    }

private:
    void check_level(std::size_t l) const
    {
        if (l > covers_.size())
            throw ArithmeticError("level above the tower");
    }

    static Rational value_from_series(const Series &s)
    {
        if (s.known_nonzero() && s.valuation() < 0)
            throw PoleError("function has a pole at the point");
        return s.coeff(0);
    }

    WeierstrassCurve curve_;
    std::vector<Cover> covers_;
};

} // namespace lgf

#endif // LGF_FUNCTION_FIELD_HPP
