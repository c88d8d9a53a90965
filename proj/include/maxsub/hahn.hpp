#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "error.hpp"
#include "rational.hpp"

namespace maxsub {

struct Term {
    Rat exp;
    FieldElem coeff;

    friend bool operator==(const Term &a, const Term &b) { return a.exp == b.exp && a.coeff == b.coeff; }
};

// Default bound on stream pulls; overridable per call.
inline Rat default_cap() { return Rat(64); }

// Single-consumer cursor over the terms of a series, in increasing exponent
// order. nullopt means the series has no further terms.
class TermStream
{
public:
    virtual ~TermStream() = default;
    virtual std::optional<Term> next() = 0;
};

// Reproducible description of an infinite series. Each instantiate() call
// starts a fresh cursor from the first term.
class StreamRule
{
public:
    virtual ~StreamRule() = default;
    virtual std::unique_ptr<TermStream> instantiate() const = 0;
    virtual std::string name() const = 0;
    virtual std::map<std::string, std::string> params() const = 0;
    // True if the rule's series is known not to be algebraic over k(t).
    virtual bool transcendental() const = 0;
};

using RulePtr = std::shared_ptr<const StreamRule>;

namespace detail {

class GeneratorStream : public TermStream
{
public:
    template <class F>
    explicit GeneratorStream(F f) : f_(std::move(f))
    {
    }
    std::optional<Term> next() override { return f_(i_++); }

private:
    std::function<std::optional<Term>(long)> f_;
    long i_ = 0;
};

} // namespace detail

// sum_{i >= start} coeff * t^(i + 2^-i). Denominators are unbounded, so the
// series lies outside every k((t^(1/n))).
class GeometricGapRule : public StreamRule
{
public:
    GeometricGapRule(long start = 1, FieldElem coeff = FieldElem(1)) : start_(start), coeff_(std::move(coeff))
    {
        if (start < 0)
            fail(errc::invalid_descriptor, "geometric_gap start must be >= 0");
        if (coeff_.is_zero())
            fail(errc::invalid_descriptor, "geometric_gap coefficient must be nonzero");
    }
    std::unique_ptr<TermStream> instantiate() const override
    {
        const long start = start_;
        const FieldElem c = coeff_;
        return std::make_unique<detail::GeneratorStream>([start, c](long k) -> std::optional<Term> {
            const long i = start + k;
            Int den = Int(1) << static_cast<unsigned long>(i);
            return Term{Rat(i) + make_rat(Int(1), den), c};
        });
    }
    std::string name() const override { return "geometric_gap"; }
    std::map<std::string, std::string> params() const override
    {
        return {{"start", std::to_string(start_)}, {"coeff", coeff_.str()}};
    }
    bool transcendental() const override { return true; }

private:
    long start_;
    FieldElem coeff_;
};

// sum_{i >= start} coeff * t^i = coeff * t^start / (1 - t).
class IntegersRule : public StreamRule
{
public:
    IntegersRule(long start = 1, FieldElem coeff = FieldElem(1)) : start_(start), coeff_(std::move(coeff))
    {
        if (start < 0)
            fail(errc::invalid_descriptor, "integers start must be >= 0");
        if (coeff_.is_zero())
            fail(errc::invalid_descriptor, "integers coefficient must be nonzero");
    }
    std::unique_ptr<TermStream> instantiate() const override
    {
        const long start = start_;
        const FieldElem c = coeff_;
        return std::make_unique<detail::GeneratorStream>(
            [start, c](long k) -> std::optional<Term> { return Term{Rat(start + k), c}; });
    }
    std::string name() const override { return "integers"; }
    std::map<std::string, std::string> params() const override
    {
        return {{"start", std::to_string(start_)}, {"coeff", coeff_.str()}};
    }
    bool transcendental() const override { return false; }
    long start() const { return start_; }
    const FieldElem &coeff() const { return coeff_; }

private:
    long start_;
    FieldElem coeff_;
};

// Finite prefix of a generalized power series sum a_s t^s. All terms with
// exponent below known_below are stored; the optional tail rule describes
// the whole series and is consulted to extend the prefix.
class HahnSeries
{
public:
    HahnSeries() = default; // exact zero

    HahnSeries(std::vector<Term> terms, Precision known_below = Precision::infinity(), RulePtr tail = nullptr)
        : terms_(std::move(terms)), known_below_(std::move(known_below)), tail_(std::move(tail))
    {
        normalize();
    }

    static HahnSeries constant(const FieldElem &c) { return HahnSeries({{Rat(0), c}}); }
    static HahnSeries monomial(const FieldElem &c, const Rat &e) { return HahnSeries({{e, c}}); }
    // Series of a stream rule with nothing pulled yet.
    static HahnSeries from_rule(RulePtr rule)
    {
        HahnSeries s;
        s.tail_ = std::move(rule);
        auto cursor = s.tail_->instantiate();
        if (auto first = cursor->next())
            s.known_below_ = Precision(first->exp);
        else
            s.known_below_ = Precision::infinity();
        if (s.known_below_.is_infinite())
            s.tail_ = nullptr;
        return s;
    }

    const std::vector<Term> &terms() const noexcept { return terms_; }
    const Precision &known_below() const noexcept { return known_below_; }
    const RulePtr &tail() const noexcept { return tail_; }

    bool is_exact() const noexcept { return known_below_.is_infinite(); }
    bool is_exact_zero() const noexcept { return terms_.empty() && is_exact(); }
    bool has_tail() const noexcept { return tail_ != nullptr; }

    FieldElem coeff(const Rat &e) const
    {
        for (const auto &t : terms_)
            if (t.exp == e)
                return t.coeff;
        if (!(e < known_below_))
            fail(errc::insufficient_precision, "coefficient at " + to_string(e) + " is beyond known precision");
        return FieldElem();
    }

    // Support of the known prefix.
    std::vector<Rat> support() const
    {
        std::vector<Rat> s;
        for (const auto &t : terms_)
            s.push_back(t.exp);
        return s;
    }

    // Pull tail terms until every term below bound is present (or the tail
    // ends). Without a tail this is the identity.
    HahnSeries extended(const Precision &bound) const
    {
        if (!tail_ || bound <= known_below_)
            return *this;
        auto cursor = tail_->instantiate();
        std::vector<Term> out;
        Precision kb = Precision::infinity();
        for (long pulled = 0;; ++pulled) {
            auto t = cursor->next();
            if (!t)
                break;
            if (!(t->exp < bound) || pulled > 1000000) {
                kb = Precision(t->exp);
                break;
            }
            if (!t->coeff.is_zero() && !(floor_ && t->exp < *floor_))
                out.push_back(std::move(*t));
        }
        HahnSeries r(std::move(out), kb, kb.is_infinite() ? nullptr : tail_);
        r.floor_ = floor_;
        return r;
    }

    // The part with exponents >= u; a tail stays attached but is filtered.
    HahnSeries from_exponent(const Rat &u) const
    {
        std::vector<Term> t;
        for (const auto &x : terms_)
            if (!(x.exp < u))
                t.push_back(x);
        HahnSeries r(std::move(t), known_below_, tail_);
        if (r.tail_)
            r.floor_ = floor_ && u < *floor_ ? *floor_ : u;
        return r;
    }

    // Lowest exponent; pulls from the tail up to cap. Raises
    // ZeroOrUndetermined (exact flag set for an exact zero).
    Rat valuation(const Rat &cap = default_cap()) const
    {
        if (!terms_.empty())
            return terms_.front().exp;
        if (is_exact())
            throw zero_or_undetermined(true, "valuation of exact zero");
        if (tail_) {
            // Widen geometrically so cheap leading terms do not pull to the cap.
            Rat bound = known_below_.value();
            while (bound < cap) {
                bound = std::min<Rat>(cap, Rat(bound < 1 ? Rat(bound + 1) : Rat(2 * bound)));
                HahnSeries e = extended(Precision(bound));
                if (!e.terms_.empty())
                    return e.terms_.front().exp;
                if (e.is_exact())
                    throw zero_or_undetermined(true, "valuation of exact zero");
            }
        }
        throw zero_or_undetermined(false, "no nonzero term below " + known_below_.str());
    }

    const Term &leading() const
    {
        if (terms_.empty())
            fail(errc::zero_or_undetermined, "no leading term in known prefix");
        return terms_.front();
    }

    // Copy without tail, keeping only terms below bound.
    HahnSeries truncated(const Precision &bound) const
    {
        const Precision kb = min(bound, known_below_);
        std::vector<Term> t;
        for (const auto &x : terms_)
            if (x.exp < kb)
                t.push_back(x);
        return HahnSeries(std::move(t), kb);
    }

    HahnSeries without_tail() const
    {
        HahnSeries r = *this;
        r.tail_ = nullptr;
        r.floor_.reset();
        return r;
    }

    std::string str(const std::string &var = "t") const;

    friend bool operator==(const HahnSeries &a, const HahnSeries &b)
    {
        return a.terms_ == b.terms_ && a.known_below_ == b.known_below_;
    }

private:
    void normalize()
    {
        std::vector<Term> t;
        t.reserve(terms_.size());
        for (auto &x : terms_)
            if (!x.coeff.is_zero() && x.exp < known_below_)
                t.push_back(std::move(x));
        for (std::size_t i = 1; i < t.size(); ++i)
            if (!(t[i - 1].exp < t[i].exp))
                fail(errc::invalid_pair, "series exponents must be strictly increasing");
        terms_ = std::move(t);
        if (known_below_.is_infinite())
            tail_ = nullptr;
    }

    std::vector<Term> terms_;
    Precision known_below_ = Precision::infinity();
    RulePtr tail_;
    std::optional<Rat> floor_; // tail terms below this are not part of the series
};

// Build from unsorted terms, combining equal exponents.
inline HahnSeries series_from_terms(const std::vector<Term> &terms, Precision known_below = Precision::infinity())
{
    std::map<Rat, FieldElem> acc;
    for (const auto &t : terms)
        acc[t.exp] += t.coeff;
    std::vector<Term> out;
    for (auto &[e, c] : acc)
        if (!c.is_zero())
            out.push_back({e, c});
    return HahnSeries(std::move(out), std::move(known_below));
}

inline HahnSeries operator-(const HahnSeries &a)
{
    std::vector<Term> t = a.terms();
    for (auto &x : t)
        x.coeff = -x.coeff;
    return HahnSeries(std::move(t), a.known_below());
}

inline HahnSeries operator+(const HahnSeries &a, const HahnSeries &b)
{
    const Precision kb = min(a.known_below(), b.known_below());
    std::vector<Term> out;
    std::size_t i = 0, j = 0;
    const auto &x = a.terms(), &y = b.terms();
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].exp < y[j].exp))
            out.push_back(x[i++]);
        else if (i == x.size() || y[j].exp < x[i].exp)
            out.push_back(y[j++]);
        else {
            out.push_back({x[i].exp, x[i].coeff + y[j].coeff});
            ++i;
            ++j;
        }
    }
    return HahnSeries(std::move(out), kb);
}

inline HahnSeries operator-(const HahnSeries &a, const HahnSeries &b) { return a + (-b); }

namespace detail {

// Lowest possible exponent of a series: first term, else its precision.
inline Precision lowest(const HahnSeries &a)
{
    return a.terms().empty() ? a.known_below() : Precision(a.terms().front().exp);
}

} // namespace detail

inline HahnSeries operator*(const HahnSeries &a, const HahnSeries &b)
{
    if (a.is_exact_zero() || b.is_exact_zero())
        return HahnSeries();
    const Precision kb = min(a.known_below() + detail::lowest(b), b.known_below() + detail::lowest(a));
    std::map<Rat, FieldElem> acc;
    for (const auto &x : a.terms())
        for (const auto &y : b.terms()) {
            Rat e = x.exp + y.exp;
            if (e < kb)
                acc[e] += x.coeff * y.coeff;
        }
    std::vector<Term> out;
    for (auto &[e, c] : acc)
        if (!c.is_zero())
            out.push_back({e, c});
    return HahnSeries(std::move(out), kb);
}

inline HahnSeries scale(const HahnSeries &a, const FieldElem &c)
{
    if (c.is_zero())
        return HahnSeries();
    std::vector<Term> t = a.terms();
    for (auto &x : t)
        x.coeff *= c;
    return HahnSeries(std::move(t), a.known_below());
}

// Multiply by c * t^e.
inline HahnSeries shift(const HahnSeries &a, const Rat &e, const FieldElem &c = FieldElem(1))
{
    if (c.is_zero())
        return HahnSeries();
    std::vector<Term> t = a.terms();
    for (auto &x : t) {
        x.exp += e;
        x.coeff *= c;
    }
    return HahnSeries(std::move(t), a.known_below() + e);
}

inline HahnSeries pow(const HahnSeries &a, unsigned n)
{
    HahnSeries r = HahnSeries::constant(FieldElem(1)), b = a;
    while (n) {
        if (n & 1)
            r = r * b;
        n >>= 1;
        if (n)
            b = b * b;
    }
    return r;
}

inline Rat valuation(const HahnSeries &a, const Rat &cap = default_cap()) { return a.valuation(cap); }

// 1/a with every term below precision (and below what a's own precision
// allows, which is known_below(a) - 2 v(a)).
inline HahnSeries reciprocal(const HahnSeries &a, const Rat &precision, const Rat &cap = default_cap())
{
    if (a.is_exact_zero())
        fail(errc::zero_division, "reciprocal of zero series");
    const Rat v = a.valuation(cap);
    const HahnSeries full = a.extended(Precision(Rat(precision + 2 * v)));
    const FieldElem c = full.terms().front().coeff;
    // a = c t^v (1 + r) with v(r) > 0.
    HahnSeries r = shift(full, Rat(-v), c.inverse()) - HahnSeries::constant(FieldElem(1));
    const Precision bound = min(Precision(Rat(precision + v)), r.known_below());
    HahnSeries u = HahnSeries::constant(FieldElem(1)).truncated(bound);
    if (!r.terms().empty()) {
        const Rat step = r.terms().front().exp;
        HahnSeries power = HahnSeries::constant(FieldElem(1));
        const HahnSeries neg = (-r).truncated(bound);
        for (Rat reached = 0; reached < bound; reached += step) {
            power = (power * neg).truncated(bound);
            if (power.terms().empty())
                break;
            u = u + power;
        }
    }
    u = u.truncated(bound);
    return shift(u, Rat(-v), c.inverse());
}

struct CutoffResult {
    HahnSeries high; // sum over s >= u
    HahnSeries low;  // finite sum over s < u
};

inline CutoffResult cutoff(const HahnSeries &a, const Rat &u)
{
    HahnSeries full = a;
    if (full.known_below() < Precision(u)) {
        if (!full.has_tail())
            fail(errc::insufficient_precision,
                 "cutoff at " + to_string(u) + " needs terms known below it, have " + full.known_below().str());
        full = full.extended(Precision(u));
    }
    std::vector<Term> lo;
    for (const auto &t : full.terms())
        if (t.exp < u)
            lo.push_back(t);
    return {full.from_exponent(u), HahnSeries(std::move(lo))};
}

// A sequence s_1 < s_2 < ... with finite series alpha_i satisfying
// supp(alpha_i) in [0, s_i) and supp(alpha_{i+1} - alpha_i) in [s_i, s_{i+1}).
// A finite list is extended either constantly (alpha_i = alpha_m for i > m)
// or by a continuation rule describing the limit series.
struct AdmissiblePair {
    std::vector<Rat> s;
    std::vector<HahnSeries> alpha;
    bool constant_extension = false;
    RulePtr continuation;
};

namespace detail {

inline bool support_within(const HahnSeries &a, const Rat &lo, const Precision &hi)
{
    for (const auto &t : a.terms())
        if (t.exp < lo || !(t.exp < hi))
            return false;
    return true;
}

} // namespace detail

inline void validate_pair(const AdmissiblePair &p)
{
    if (p.s.size() != p.alpha.size() || p.s.empty())
        fail(errc::invalid_pair, "admissible pair needs equally many exponents and series (at least one)");
    for (std::size_t i = 0; i < p.s.size(); ++i) {
        if (!p.alpha[i].is_exact())
            fail(errc::invalid_pair, "pair entries must be finite series");
        if (i > 0 && !(p.s[i - 1] < p.s[i]))
            fail(errc::invalid_pair, "exponents must be strictly increasing");
        if (!detail::support_within(p.alpha[i], Rat(0), Precision(p.s[i])))
            fail(errc::invalid_pair, "supp(alpha_" + std::to_string(i + 1) + ") not in [0, s_" + std::to_string(i + 1) + ")");
        if (i > 0 && !detail::support_within(p.alpha[i] - p.alpha[i - 1], p.s[i - 1], Precision(p.s[i])))
            fail(errc::invalid_pair, "supp(alpha_" + std::to_string(i + 1) + " - alpha_" + std::to_string(i) +
                                         ") not in [s_" + std::to_string(i) + ", s_" + std::to_string(i + 1) + ")");
    }
    if (p.continuation) {
        HahnSeries lim = HahnSeries::from_rule(p.continuation).extended(Precision(p.s.back()));
        if (!(lim.truncated(Precision(p.s.back())).terms() == p.alpha.back().terms()))
            fail(errc::invalid_pair, "continuation rule disagrees with the last series below s_m");
        if (p.constant_extension)
            fail(errc::invalid_pair, "pair cannot be both constant and rule-continued");
    }
}

// The limit alpha: supp(alpha) meets [0, s_i) exactly in supp(alpha_i).
inline HahnSeries limit_of_pair(const AdmissiblePair &p)
{
    validate_pair(p);
    if (p.constant_extension)
        return HahnSeries(p.alpha.back().terms());
    if (p.continuation)
        return HahnSeries::from_rule(p.continuation).extended(Precision(p.s.back()));
    return HahnSeries(p.alpha.back().terms(), Precision(p.s.back()));
}

// The canonical pair of a series: s_i is the i-th support element and
// alpha_i the sum of the terms before it. Only the first n entries.
inline AdmissiblePair pair_of_series(const HahnSeries &a, std::size_t n, const Rat &cap = default_cap())
{
    AdmissiblePair p;
    HahnSeries full = a.has_tail() ? a.extended(Precision(cap)) : a;
    std::vector<Term> acc;
    for (const auto &t : full.terms()) {
        if (p.s.size() == n)
            break;
        p.s.push_back(t.exp);
        p.alpha.push_back(HahnSeries(acc));
        acc.push_back(t);
    }
    if (full.is_exact() && p.s.size() < n) {
        p.constant_extension = true;
        if (p.s.empty() || acc.size() > p.alpha.size()) {
            Rat next = p.s.empty() ? Rat(1) : Rat(p.s.back() + 1);
            p.s.push_back(next);
            p.alpha.push_back(HahnSeries(acc));
        }
    } else if (a.has_tail()) {
        p.continuation = a.tail();
    }
    return p;
}

namespace detail {

inline std::string exponent_text(const Rat &e)
{
    if (is_integer(e) && e >= 0)
        return to_string(e);
    return "(" + to_string(e) + ")";
}

// Coefficient text usable as a product factor.
inline std::string coeff_factor(const FieldElem &c)
{
    const std::string s = c.str();
    if (c.is_rational() || s.find(' ') == std::string::npos)
        return s;
    return "(" + s + ")";
}

} // namespace detail

// Terms joined as "c*var^e"; coefficient signs folded into +/-.
inline std::string format_terms(const std::vector<std::pair<FieldElem, std::string>> &parts)
{
    if (parts.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto &[c, mono] : parts) {
        const bool negative = c.is_rational() ? c.rational_value() < 0 : c.str().find_first_of(" -") == 0;
        FieldElem mag = negative ? -c : c;
        std::string piece;
        if (mono.empty())
            piece = detail::coeff_factor(mag);
        else if (mag.is_one())
            piece = mono;
        else
            piece = detail::coeff_factor(mag) + "*" + mono;
        if (first)
            out += negative ? "-" + piece : piece;
        else
            out += (negative ? " - " : " + ") + piece;
        first = false;
    }
    return out;
}

inline std::string HahnSeries::str(const std::string &var) const
{
    std::vector<std::pair<FieldElem, std::string>> parts;
    for (const auto &t : terms_) {
        std::string mono;
        if (t.exp != 0)
            mono = t.exp == 1 ? var : var + "^" + detail::exponent_text(t.exp);
        parts.emplace_back(t.coeff, mono);
    }
    std::string s = format_terms(parts);
    if (known_below_.is_finite())
        s += " + O(" + var + "^" + detail::exponent_text(known_below_.value()) + ")";
    return s;
}

} // namespace maxsub
