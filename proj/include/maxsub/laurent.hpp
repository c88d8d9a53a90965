#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "error.hpp"
#include "hahn.hpp"
#include "upoly.hpp"

namespace maxsub {

// (t-exponent, y-exponent)
struct Exponent {
    long t;
    unsigned y;

    friend bool operator==(const Exponent &, const Exponent &) = default;
};

// Display order: higher y-degree first, then higher t-exponent.
struct ExponentOrder {
    bool operator()(const Exponent &a, const Exponent &b) const
    {
        if (a.y != b.y)
            return a.y > b.y;
        return a.t > b.t;
    }
};

// Element of k[t, 1/t, y].
class LaurentPoly
{
public:
    using Map = std::map<Exponent, FieldElem, ExponentOrder>;

    LaurentPoly() = default;
    LaurentPoly(const FieldElem &c) { add_term({0, 0}, c); }
    LaurentPoly(long c) : LaurentPoly(FieldElem(c)) {}
    explicit LaurentPoly(Map terms)
    {
        for (auto &[e, c] : terms)
            add_term(e, c);
    }

    static LaurentPoly monomial(const FieldElem &c, long t_exp, unsigned y_exp)
    {
        LaurentPoly p;
        p.add_term({t_exp, y_exp}, c);
        return p;
    }
    static LaurentPoly t(long e = 1) { return monomial(FieldElem(1), e, 0); }
    static LaurentPoly y(unsigned e = 1) { return monomial(FieldElem(1), 0, e); }

    const Map &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    FieldElem coeff(long t_exp, unsigned y_exp) const
    {
        auto it = terms_.find({t_exp, y_exp});
        return it == terms_.end() ? FieldElem() : it->second;
    }

    // -1 for zero.
    long y_degree() const
    {
        long d = -1;
        for (const auto &[e, c] : terms_)
            d = std::max<long>(d, e.y);
        return d;
    }
    long min_t() const
    {
        if (terms_.empty())
            fail(errc::zero_input, "t-range of the zero polynomial");
        long m = terms_.begin()->first.t;
        for (const auto &[e, c] : terms_)
            m = std::min(m, e.t);
        return m;
    }
    long max_t() const
    {
        if (terms_.empty())
            fail(errc::zero_input, "t-range of the zero polynomial");
        long m = terms_.begin()->first.t;
        for (const auto &[e, c] : terms_)
            m = std::max(m, e.t);
        return m;
    }
    // True iff the element lies in k[t, y].
    bool is_polynomial() const { return terms_.empty() || min_t() >= 0; }

    // Coefficient of y^j as a Laurent polynomial in t (map t-exp -> coeff).
    std::map<long, FieldElem> y_coeff(unsigned j) const
    {
        std::map<long, FieldElem> out;
        for (const auto &[e, c] : terms_)
            if (e.y == j)
                out[e.t] = c;
        return out;
    }

    LaurentPoly operator-() const
    {
        LaurentPoly r = *this;
        for (auto &[e, c] : r.terms_)
            c = -c;
        return r;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly &b)
    {
        for (const auto &[e, c] : b.terms_)
            a.add_term(e, c);
        return a;
    }
    friend LaurentPoly operator-(const LaurentPoly &a, const LaurentPoly &b) { return a + (-b); }
    friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b)
    {
        LaurentPoly r;
        for (const auto &[e1, c1] : a.terms_)
            for (const auto &[e2, c2] : b.terms_)
                r.add_term({e1.t + e2.t, e1.y + e2.y}, c1 * c2);
        return r;
    }
    LaurentPoly &operator+=(const LaurentPoly &o) { return *this = *this + o; }
    LaurentPoly &operator-=(const LaurentPoly &o) { return *this = *this - o; }
    LaurentPoly &operator*=(const LaurentPoly &o) { return *this = *this * o; }

    LaurentPoly pow(unsigned n) const
    {
        LaurentPoly r(1), b = *this;
        while (n) {
            if (n & 1)
                r *= b;
            n >>= 1;
            if (n)
                b *= b;
        }
        return r;
    }

    // Multiply by t^k.
    LaurentPoly shifted(long k) const
    {
        LaurentPoly r;
        for (const auto &[e, c] : terms_)
            r.terms_.emplace(Exponent{e.t + k, e.y}, c);
        return r;
    }

    // Value at a point (t must be nonzero if negative powers occur).
    FieldElem eval(const FieldElem &tv, const FieldElem &yv) const
    {
        FieldElem r;
        for (const auto &[e, c] : terms_)
            r += c * tv.pow(e.t) * yv.pow(e.y);
        return r;
    }

    friend bool operator==(const LaurentPoly &a, const LaurentPoly &b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LaurentPoly &a, const LaurentPoly &b) { return !(a == b); }

    // Canonical text, e.g. "y^2 - 2*t*y + t^2"; variable names configurable.
    std::string str(const std::string &tv = "t", const std::string &yv = "y") const;

private:
    void add_term(const Exponent &e, const FieldElem &c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    Map terms_;
};

namespace detail {

inline std::string power_text(const std::string &v, long e)
{
    if (e == 1)
        return v;
    if (e < 0)
        return v + "^(" + std::to_string(e) + ")";
    return v + "^" + std::to_string(e);
}

} // namespace detail

inline std::string LaurentPoly::str(const std::string &tv, const std::string &yv) const
{
    std::vector<std::pair<FieldElem, std::string>> parts;
    for (const auto &[e, c] : terms_) {
        std::string mono;
        if (e.t != 0)
            mono = detail::power_text(tv, e.t);
        if (e.y != 0)
            mono += (mono.empty() ? "" : "*") + detail::power_text(yv, static_cast<long>(e.y));
        parts.emplace_back(c, mono);
    }
    return format_terms(parts);
}

// t -> 1/t if swap; y -> t^(-twist) y.
struct Automorphism {
    bool swap = false;
    long twist = 0;

    Automorphism inverse() const { return swap ? *this : Automorphism{false, -twist}; }
    bool is_identity() const { return !swap && twist == 0; }
    friend bool operator==(const Automorphism &, const Automorphism &) = default;
};

inline LaurentPoly apply_automorphism(const Automorphism &s, const LaurentPoly &f)
{
    LaurentPoly::Map out;
    for (const auto &[e, c] : f.terms()) {
        const long te = (s.swap ? -e.t : e.t) - s.twist * static_cast<long>(e.y);
        out.emplace(Exponent{te, e.y}, c);
    }
    return LaurentPoly(std::move(out));
}

// Laurent polynomial in t as an exact series.
inline HahnSeries t_series(const std::map<long, FieldElem> &c)
{
    std::vector<Term> terms;
    for (const auto &[e, v] : c)
        terms.push_back({Rat(e), v});
    return HahnSeries(std::move(terms));
}

// f(t, alpha) by Horner in y.
inline HahnSeries evaluate_y(const LaurentPoly &f, const HahnSeries &alpha)
{
    const long d = f.y_degree();
    if (d < 0)
        return HahnSeries();
    HahnSeries r = t_series(f.y_coeff(static_cast<unsigned>(d)));
    for (long j = d - 1; j >= 0; --j)
        r = r * alpha + t_series(f.y_coeff(static_cast<unsigned>(j)));
    return r;
}

// f(alpha(u), 1/u) as a series in u. Negative powers of t use the
// reciprocal of alpha; the result is exact below at least target (when
// alpha's own precision allows).
inline HahnSeries evaluate_t(const LaurentPoly &f, const HahnSeries &alpha, const Rat &target,
                             const Rat &cap = default_cap())
{
    if (f.is_zero())
        return HahnSeries();
    const long d = f.y_degree();
    const long lo = f.min_t(), hi = f.max_t();
    const Rat need = target + d + 1;
    const HahnSeries a = alpha.extended(Precision(Rat(need + 1)));
    HahnSeries inv;
    if (lo < 0) {
        if (a.is_exact_zero())
            fail(errc::zero_division, "t has no inverse at alpha = 0");
        Rat v = a.valuation(cap);
        if (v != 0)
            fail(errc::zero_division, "alpha must be a unit (valuation 0) to substitute 1/t");
        inv = reciprocal(a, need, cap);
    }
    HahnSeries result;
    for (long i = lo; i <= hi; ++i) {
        std::vector<Term> g;
        for (const auto &[e, c] : f.terms())
            if (e.t == i)
                g.push_back({Rat(-static_cast<long>(e.y)), c});
        if (g.empty())
            continue;
        HahnSeries gi = series_from_terms(g);
        HahnSeries ti = i >= 0 ? pow(a, static_cast<unsigned>(i)) : pow(inv, static_cast<unsigned>(-i));
        result = result + ti * gi;
    }
    return result;
}

// min_j nu(f_j) for f = sum f_j y^j with series coefficients.
inline Rat gauss_valuation(const std::vector<HahnSeries> &f, const Rat &cap = default_cap())
{
    std::optional<Rat> best;
    bool undetermined = false;
    for (const auto &c : f) {
        if (c.is_exact_zero())
            continue;
        try {
            Rat v = c.valuation(cap);
            if (!best || v < *best)
                best = v;
        } catch (const zero_or_undetermined &e) {
            if (!e.exact_zero())
                undetermined = true;
        }
    }
    if (undetermined)
        fail(errc::undetermined, "a coefficient valuation is not determinable within the cap");
    if (!best)
        fail(errc::zero_input, "Gauss valuation of the zero polynomial");
    return *best;
}

inline Rat gauss_valuation(const LaurentPoly &f)
{
    if (f.is_zero())
        fail(errc::zero_input, "Gauss valuation of the zero polynomial");
    return Rat(f.min_t());
}

// Coefficients of y^0..y^d as exact series.
inline std::vector<HahnSeries> y_coefficients(const LaurentPoly &f)
{
    std::vector<HahnSeries> out;
    for (long j = 0; j <= f.y_degree(); ++j)
        out.push_back(t_series(f.y_coeff(static_cast<unsigned>(j))));
    return out;
}

// Polynomials in y over k[t]: outer index y-degree, inner t-degree.
using BiPoly = Poly<FPoly>;

// f = t^shift * p with p in k[t][y] not divisible by t.
struct ClearedPoly {
    BiPoly poly;
    long shift = 0;
};

inline ClearedPoly to_bipoly(const LaurentPoly &f)
{
    if (f.is_zero())
        return {};
    const long lo = f.min_t();
    std::vector<std::vector<FieldElem>> c(static_cast<std::size_t>(f.y_degree() + 1));
    for (const auto &[e, v] : f.terms()) {
        auto &row = c[e.y];
        const std::size_t k = static_cast<std::size_t>(e.t - lo);
        if (row.size() <= k)
            row.resize(k + 1, FieldElem());
        row[k] = v;
    }
    std::vector<FPoly> outer;
    for (auto &row : c)
        outer.push_back(FPoly(std::move(row)));
    return {BiPoly(std::move(outer)), lo};
}

inline LaurentPoly from_bipoly(const BiPoly &p, long shift = 0)
{
    LaurentPoly::Map m;
    for (std::size_t j = 0; j < p.coeffs().size(); ++j)
        for (std::size_t i = 0; i < p.coeffs()[j].coeffs().size(); ++i) {
            const FieldElem &c = p.coeffs()[j].coeffs()[i];
            if (!c.is_zero())
                m.emplace(Exponent{static_cast<long>(i) + shift, static_cast<unsigned>(j)}, c);
        }
    return LaurentPoly(std::move(m));
}

// Does m divide f in k(t)[y]? m must be nonzero with positive y-degree or a
// nonzero element of k(t) (which divides everything).
inline bool divides_over_rational_functions(const LaurentPoly &m, const LaurentPoly &f)
{
    if (m.is_zero())
        fail(errc::zero_division, "divisibility by zero");
    if (f.is_zero())
        return true;
    if (m.y_degree() == 0)
        return true;
    return pseudo_remainder(to_bipoly(f).poly, to_bipoly(m).poly).is_zero();
}

} // namespace maxsub
