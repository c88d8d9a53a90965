#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "error.hpp"
#include "hahn.hpp"
#include "laurent.hpp"
#include "newton_puiseux.hpp"

namespace maxsub {

struct Options {
    Rat cap = default_cap(); // largest exponent pulled from expansions and streams
};

// -- alpha ----------------------------------------------------------------

enum class AlphaKind { finite, algebraic, stream };

// A series alpha with nu(alpha) >= 0, described finitely. Algebraic
// branches carry a minimal polynomial m(T, Y) in k[T][Y] (T the series
// variable) plus a prefix singling out one root. Streams carry a rule and a
// caller-asserted transcendence flag.
class AlphaDescriptor
{
public:
    static AlphaDescriptor finite(HahnSeries s)
    {
        if (!s.is_exact() || s.has_tail())
            fail(errc::invalid_descriptor, "finite alpha must be an exact finite series");
        check_nonnegative(s);
        AlphaDescriptor a;
        a.kind_ = AlphaKind::finite;
        a.series_ = std::move(s);
        return a;
    }

    static AlphaDescriptor algebraic(const LaurentPoly &minpoly, HahnSeries prefix, CycloField field = CycloField(1),
                                     const Options &opt = {})
    {
        if (minpoly.is_zero() || minpoly.y_degree() < 1)
            fail(errc::invalid_descriptor, "minimal polynomial must have positive degree in the root variable");
        if (!minpoly.is_polynomial())
            fail(errc::invalid_descriptor, "minimal polynomial must be a polynomial");
        AlphaDescriptor a;
        a.kind_ = AlphaKind::algebraic;
        a.minpoly_ = normalize_minpoly(minpoly);
        a.field_ = field;
        a.series_ = prefix.without_tail();
        check_nonnegative(a.series_);
        if (a.series_.is_exact()) {
            // An exact prefix is known just past its last term; branch exponents
            // have denominators dividing lcm(1..deg), so nothing fits in between.
            unsigned long l = 1;
            for (unsigned long i = 2; i <= static_cast<unsigned long>(a.minpoly_.y_degree()); ++i)
                l = std::lcm(l, i);
            const Rat last = a.series_.terms().empty() ? Rat(0) : a.series_.terms().back().exp;
            a.series_ = HahnSeries(a.series_.terms(), Precision(Rat(last + make_rat(1, 2 * static_cast<long>(l)))));
        }
        const auto branches = puiseux_expand(a.minpoly_, Rat(std::max<Rat>(Rat(1), prefix_bound(a.series_))), field);
        if (branches.size() > 1)
            a.separation_ = separation_precision(branches);
        if (a.separation_ && !(Precision(*a.separation_) < a.series_.known_below()))
            fail(errc::invalid_descriptor, "branch prefix must be known beyond the separation exponent " +
                                               to_string(*a.separation_));
        // Identify the branch now so a bad prefix is rejected early.
        a.series_ = a.matching_branch(a.series_.known_below().is_finite()
                                          ? Rat(std::max<Rat>(a.series_.known_below().value(), Rat(1)))
                                          : Rat(std::max<Rat>(prefix_bound(a.series_), Rat(1))),
                                      opt);
        (void)opt;
        return a;
    }

    static AlphaDescriptor stream(RulePtr rule, bool transcendental)
    {
        if (!rule)
            fail(errc::invalid_descriptor, "stream alpha needs a rule");
        AlphaDescriptor a;
        a.kind_ = AlphaKind::stream;
        a.series_ = HahnSeries::from_rule(rule);
        a.rule_ = std::move(rule);
        a.transcendental_ = transcendental;
        if (!a.series_.terms().empty() || a.series_.known_below() < Precision(0))
            check_nonnegative(a.series_.extended(Precision(1)));
        return a;
    }

    AlphaKind kind() const noexcept { return kind_; }
    const LaurentPoly &minpoly() const noexcept { return minpoly_; }
    const CycloField &field() const noexcept { return field_; }
    const std::optional<Rat> &separation() const noexcept { return separation_; }
    const RulePtr &rule() const noexcept { return rule_; }
    bool transcendental() const noexcept { return transcendental_; }
    // What is currently known (prefix for algebraic and stream kinds).
    const HahnSeries &known() const noexcept { return series_; }

    // alpha with all terms below bound present (or exact).
    HahnSeries value(const Rat &bound, const Options &opt = {}) const
    {
        switch (kind_) {
        case AlphaKind::finite:
            return series_;
        case AlphaKind::stream:
            return series_.extended(Precision(bound));
        case AlphaKind::algebraic:
            if (!(series_.known_below() <= Precision(bound)))
                return series_;
            return matching_branch(bound, opt);
        }
        return series_;
    }

    // True when the support is known to be finite.
    bool finite_support() const
    {
        return kind_ == AlphaKind::finite || (kind_ == AlphaKind::algebraic && series_.is_exact());
    }

private:
    static void check_nonnegative(const HahnSeries &s)
    {
        if (!s.terms().empty() && s.terms().front().exp < 0)
            fail(errc::invalid_descriptor, "alpha must have nonnegative valuation");
    }

    static Rat prefix_bound(const HahnSeries &s)
    {
        if (s.known_below().is_finite())
            return s.known_below().value();
        return s.terms().empty() ? Rat(1) : Rat(s.terms().back().exp + 1);
    }

    HahnSeries matching_branch(const Rat &bound, const Options &) const
    {
        const auto branches = puiseux_expand(minpoly_, bound, field_);
        const HahnSeries *hit = nullptr;
        for (const auto &b : branches) {
            const Precision k = min(b.expansion.known_below(), series_.known_below());
            if (b.expansion.truncated(k) == series_.truncated(k)) {
                if (hit && !(hit->terms() == b.expansion.terms()))
                    fail(errc::invalid_descriptor, "branch prefix matches more than one root");
                hit = &b.expansion;
            }
        }
        if (!hit)
            fail(errc::invalid_descriptor, "branch prefix matches no root of the minimal polynomial");
        return *hit;
    }

    AlphaKind kind_ = AlphaKind::finite;
    HahnSeries series_;
    LaurentPoly minpoly_;
    CycloField field_{1};
    std::optional<Rat> separation_;
    RulePtr rule_;
    bool transcendental_ = false;

public:
    // Primitive over k[T], leading coefficient's leading coefficient 1, no T factor.
    static LaurentPoly normalize_minpoly(const LaurentPoly &m)
    {
        const auto cleared = to_bipoly(m);
        return from_bipoly(detail::primitive_part(cleared.poly));
    }
};

// -- subalgebras ----------------------------------------------------------

enum class CaseKind { psi, units };

// psi: sigma^{-1}(Psi(alpha)) inside k[t, 1/t, y].
// units: {f : nu_u(f(alpha(u), 1/u)) >= 0}, alpha a series in u = 1/y.
// poly_subring: intersection with k[t, y].
struct SubalgebraDescriptor {
    CaseKind kind = CaseKind::psi;
    Automorphism sigma;
    AlphaDescriptor alpha = AlphaDescriptor::finite(HahnSeries());
    bool poly_subring = false;
};

inline bool n_condition_check(const AlphaDescriptor &a, const Options &opt = {});

inline void validate(const SubalgebraDescriptor &d, const Options &opt = {})
{
    if (d.kind == CaseKind::psi && d.poly_subring)
        fail(errc::invalid_descriptor, "psi-case algebras already contain k[t, y]; no polynomial restriction");
    if (d.kind == CaseKind::units) {
        if (!d.sigma.is_identity())
            fail(errc::invalid_descriptor, "units-case algebras carry no automorphism");
        if (!d.poly_subring && !n_condition_check(d.alpha, opt))
            fail(errc::invalid_descriptor, "units-case alpha needs a nonzero constant term and more support");
        if (d.poly_subring) {
            const HahnSeries a = d.alpha.value(Rat(1), opt);
            bool nonconstant = false;
            for (const auto &t : a.terms())
                nonconstant = nonconstant || t.exp != 0;
            if (!nonconstant && a.is_exact())
                fail(errc::invalid_descriptor, "units-case alpha must not be a constant");
        }
    }
}

inline SubalgebraDescriptor psi(AlphaDescriptor a, Automorphism s = {})
{
    SubalgebraDescriptor d;
    d.kind = CaseKind::psi;
    d.sigma = s;
    d.alpha = std::move(a);
    validate(d);
    return d;
}

inline SubalgebraDescriptor units(AlphaDescriptor a, bool poly_subring = false)
{
    SubalgebraDescriptor d;
    d.kind = CaseKind::units;
    d.alpha = std::move(a);
    d.poly_subring = poly_subring;
    validate(d);
    return d;
}

inline SubalgebraDescriptor polynomial_part(SubalgebraDescriptor d)
{
    d.poly_subring = true;
    validate(d);
    return d;
}

// -- omega ----------------------------------------------------------------

struct Omega {
    bool exact_zero = false;
    Rat value; // meaningful when !exact_zero
};

namespace detail {

// Minimal polynomial of alpha when one is known; nullopt for transcendental
// streams. Throws Undetermined for other streams.
inline std::optional<LaurentPoly> alpha_minpoly(const AlphaDescriptor &a, const Options &opt);

inline std::optional<LaurentPoly> stream_minpoly(const StreamRule &r)
{
    if (auto ir = dynamic_cast<const IntegersRule *>(&r)) {
        // (1 - T) Y - c T^start
        LaurentPoly m = (LaurentPoly(1) - LaurentPoly::t()) * LaurentPoly::y() -
                        LaurentPoly::monomial(ir->coeff(), ir->start(), 0);
        return m;
    }
    return std::nullopt;
}

} // namespace detail

// nu(g(T, alpha)), or ExactZero when g vanishes at alpha.
inline Omega omega(const LaurentPoly &g, const AlphaDescriptor &a, const Options &opt = {})
{
    if (g.is_zero())
        fail(errc::zero_input, "omega of the zero element");
    if (g.y_degree() == 0)
        return {false, Rat(g.min_t())};
    if (a.kind() == AlphaKind::finite) {
        HahnSeries r = evaluate_y(g, a.known());
        if (r.is_exact_zero())
            return {true, Rat(0)};
        return {false, r.valuation()};
    }
    if (a.kind() == AlphaKind::algebraic) {
        if (divides_over_rational_functions(a.minpoly(), g))
            return {true, Rat(0)};
    } else if (!a.transcendental()) {
        if (auto m = detail::stream_minpoly(*a.rule()); m && divides_over_rational_functions(*m, g))
            return {true, Rat(0)};
    }
    Rat bound = std::max<Rat>(Rat(2), a.separation() ? Rat(*a.separation() + 1) : Rat(2));
    for (;;) {
        const HahnSeries v = a.value(bound, opt);
        const HahnSeries r = evaluate_y(g, v);
        if (!r.terms().empty())
            return {false, r.terms().front().exp};
        if (r.is_exact_zero())
            return {true, Rat(0)};
        if (!(bound < opt.cap))
            fail(errc::undetermined, "no leading term of f(alpha) below the precision cap " + to_string(opt.cap));
        bound = std::min<Rat>(opt.cap, Rat(2 * bound));
    }
}

enum class Verdict { in, not_in, in_conductor, undetermined };

inline const char *verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::in:
        return "In";
    case Verdict::not_in:
        return "NotIn";
    case Verdict::in_conductor:
        return "InConductor";
    case Verdict::undetermined:
        return "Undetermined";
    }
    return "?";
}

struct MembershipResult {
    Verdict verdict = Verdict::undetermined;
    std::optional<Rat> omega; // absent for exact zero, non-polynomials, undetermined
    Precision reached;        // precision cap when undetermined

    // InConductor counts as membership.
    bool member() const { return verdict == Verdict::in || verdict == Verdict::in_conductor; }
};

namespace detail {

// f(t = Y, y = 1/T) * Y^shift with nonnegative Y-exponents.
struct RoleSwap {
    LaurentPoly g;
    long shift = 0;
};

inline RoleSwap swap_roles(const LaurentPoly &f)
{
    const long lo = f.is_zero() ? 0 : f.min_t();
    const long shift = lo < 0 ? -lo : 0;
    LaurentPoly::Map m;
    for (const auto &[e, c] : f.terms())
        m.emplace(Exponent{-static_cast<long>(e.y), static_cast<unsigned>(e.t + shift)}, c);
    return {LaurentPoly(std::move(m)), shift};
}

// Inverse direction for polynomials m(T, Y): T^a Y^b -> t^b y^(A - a).
inline LaurentPoly unswap_roles(const LaurentPoly &m)
{
    long top = 0;
    for (const auto &[e, c] : m.terms())
        top = std::max(top, e.t);
    LaurentPoly::Map out;
    for (const auto &[e, c] : m.terms())
        out.emplace(Exponent{static_cast<long>(e.y), static_cast<unsigned>(top - e.t)}, c);
    return LaurentPoly(std::move(out));
}

// omega of f relative to the descriptor, after sigma / role swap.
inline Omega descriptor_omega(const LaurentPoly &f, const SubalgebraDescriptor &d, const Options &opt)
{
    if (d.kind == CaseKind::psi)
        return omega(apply_automorphism(d.sigma, f), d.alpha, opt);
    const RoleSwap s = swap_roles(f);
    Omega w = omega(s.g, d.alpha, opt);
    if (!w.exact_zero && s.shift != 0) {
        const Rat v = d.alpha.value(Rat(1), opt).valuation(opt.cap);
        w.value -= v * s.shift;
    }
    return w;
}

} // namespace detail

inline MembershipResult membership(const LaurentPoly &f, const SubalgebraDescriptor &d, const Options &opt = {})
{
    MembershipResult r;
    if (d.poly_subring && !f.is_polynomial()) {
        r.verdict = Verdict::not_in;
        return r;
    }
    if (f.is_zero()) {
        r.verdict = Verdict::in_conductor;
        return r;
    }
    try {
        const Omega w = detail::descriptor_omega(f, d, opt);
        if (w.exact_zero) {
            r.verdict = Verdict::in_conductor;
        } else {
            r.omega = w.value;
            r.verdict = w.value >= 0 ? Verdict::in : Verdict::not_in;
        }
    } catch (const error &e) {
        if (e.code() != errc::undetermined)
            throw;
        r.verdict = Verdict::undetermined;
        r.reached = Precision(opt.cap);
    }
    return r;
}

// Membership in the crucial maximal ideal: omega > 0 or exact zero.
inline MembershipResult crucial_membership(const LaurentPoly &f, const SubalgebraDescriptor &d,
                                           const Options &opt = {})
{
    MembershipResult r = membership(f, d, opt);
    if (r.verdict == Verdict::in_conductor)
        r.verdict = Verdict::in;
    else if (r.verdict == Verdict::in && r.omega && *r.omega == 0)
        r.verdict = Verdict::not_in;
    return r;
}

inline MembershipResult theta_phi_membership(const LaurentPoly &f, const SubalgebraDescriptor &d,
                                             const Options &opt = {})
{
    if (!d.poly_subring)
        fail(errc::precondition_failed, "expected an algebra restricted to k[t, y]");
    return membership(f, d, opt);
}

// -- conductor ------------------------------------------------------------

namespace detail {

// prod_j (Y - alpha(zeta_n^j T^(1/n))) for finite alpha, n the common
// exponent denominator.
inline LaurentPoly finite_minpoly(const HahnSeries &alpha)
{
    unsigned long n = 1;
    for (const auto &t : alpha.terms())
        n = std::lcm(n, t.exp.get_den().get_ui());
    const FieldElem zeta = root_of_unity(static_cast<unsigned>(n), CycloField(static_cast<unsigned>(n)));
    // Polynomial in Y with series coefficients, lowest degree first.
    std::vector<HahnSeries> prod{HahnSeries::constant(FieldElem(1))};
    for (unsigned long j = 0; j < n; ++j) {
        std::vector<Term> conj;
        for (const auto &t : alpha.terms())
            conj.push_back({t.exp, t.coeff * zeta.pow(to_long(Int(t.exp * Rat(static_cast<long>(n * j)))))});
        const HahnSeries root(conj);
        std::vector<HahnSeries> next(prod.size() + 1);
        for (std::size_t i = 0; i < prod.size(); ++i) {
            next[i + 1] = next[i + 1] + prod[i];
            next[i] = next[i] - prod[i] * root;
        }
        prod = std::move(next);
    }
    LaurentPoly::Map m;
    for (std::size_t i = 0; i < prod.size(); ++i)
        for (const auto &t : prod[i].terms()) {
            if (!is_integer(t.exp))
                fail(errc::inconsistent, "conjugate product has a fractional exponent");
            m.emplace(Exponent{to_long(t.exp.get_num()), static_cast<unsigned>(i)}, t.coeff);
        }
    return LaurentPoly(std::move(m));
}

inline std::optional<LaurentPoly> alpha_minpoly(const AlphaDescriptor &a, const Options &)
{
    switch (a.kind()) {
    case AlphaKind::finite:
        return AlphaDescriptor::normalize_minpoly(finite_minpoly(a.known()));
    case AlphaKind::algebraic:
        return a.minpoly();
    case AlphaKind::stream:
        if (a.transcendental())
            return std::nullopt;
        if (auto m = stream_minpoly(*a.rule()))
            return AlphaDescriptor::normalize_minpoly(*m);
        fail(errc::undetermined, "stream is not declared transcendental and has no known minimal polynomial");
    }
    return std::nullopt;
}

// Unit normalization in k[t, 1/t, y]: lowest t-exponent 0, leading
// coefficient (highest y, then highest t) equal to 1.
inline LaurentPoly normalize_generator(const LaurentPoly &f)
{
    LaurentPoly g = f.shifted(-f.min_t());
    const FieldElem lead = g.terms().begin()->second;
    return g * LaurentPoly(lead.inverse());
}

} // namespace detail

inline std::optional<LaurentPoly> alpha_minimal_polynomial(const AlphaDescriptor &a, const Options &opt = {})
{
    return detail::alpha_minpoly(a, opt);
}

// Generator of the conductor ideal in k[t, 1/t, y] (k[t, y] for restricted
// algebras); nullopt for a zero conductor.
inline std::optional<LaurentPoly> conductor(const SubalgebraDescriptor &d, const Options &opt = {})
{
    auto m = detail::alpha_minpoly(d.alpha, opt);
    if (!m)
        return std::nullopt;
    if (d.kind == CaseKind::psi)
        return detail::normalize_generator(apply_automorphism(d.sigma.inverse(), *m));
    LaurentPoly g = detail::unswap_roles(*m);
    return detail::normalize_generator(g);
}

// -- generators -----------------------------------------------------------

// (y - shift) / t^power, an element of K+[y].
struct Generator {
    HahnSeries shift;
    Rat power;

    // Same element in k[t, 1/t, y] when all exponents are integers.
    std::optional<LaurentPoly> as_laurent() const
    {
        if (!is_integer(power))
            return std::nullopt;
        LaurentPoly f = LaurentPoly::y();
        for (const auto &t : shift.terms()) {
            if (!is_integer(t.exp))
                return std::nullopt;
            f -= LaurentPoly::monomial(t.coeff, to_long(t.exp.get_num()), 0);
        }
        return f.shifted(-to_long(power.get_num()));
    }

    std::string str(const std::string &tv = "t", const std::string &yv = "y") const
    {
        std::string num = yv;
        if (!shift.is_exact_zero()) {
            const std::string rest = (-shift).str(tv);
            num = "(" + yv + (rest[0] == '-' ? " - " + rest.substr(1) : " + " + rest) + ")";
        }
        if (power == 0)
            return num;
        return num + "/" + (power == 1 ? tv : tv + "^" + detail::exponent_text(power));
    }
};

inline std::vector<Generator> generators(const AlphaDescriptor &a, std::size_t n, const Options &opt = {})
{
    if (n == 0)
        fail(errc::precondition_failed, "need at least one generator");
    std::vector<Generator> out;
    if (a.finite_support()) {
        const HahnSeries s = a.value(Rat(1), opt);
        for (std::size_t j = 1; j <= n; ++j)
            out.push_back({s, Rat(static_cast<long>(j))});
        return out;
    }
    // s_i is the i-th support element, alpha_i the sum of the earlier terms.
    Rat bound = std::max<Rat>(Rat(2), a.known().known_below().is_finite() ? a.known().known_below().value() : Rat(2));
    for (;;) {
        const HahnSeries v = a.value(bound, opt);
        if (v.terms().size() >= n || v.is_exact() || !(bound < opt.cap)) {
            std::vector<Term> acc;
            for (const auto &t : v.terms()) {
                if (out.size() == n)
                    break;
                out.push_back({HahnSeries(acc), t.exp});
                acc.push_back(t);
            }
            if (out.size() < n && v.is_exact()) {
                for (std::size_t j = 1; out.size() < n; ++j)
                    out.push_back({HahnSeries(acc), Rat(static_cast<long>(j))});
            }
            if (out.size() < n)
                fail(errc::undetermined, "not enough support below the precision cap");
            return out;
        }
        bound = std::min<Rat>(opt.cap, Rat(2 * bound));
    }
}

// Valuation test for a generator against alpha: nu(alpha - shift) >= power.
inline bool generator_in(const Generator &g, const AlphaDescriptor &a, const Options &opt = {})
{
    const HahnSeries d = a.value(Rat(g.power + 1), opt) - g.shift;
    if (d.is_exact_zero())
        return true;
    if (!d.terms().empty())
        return !(d.terms().front().exp < g.power);
    return !(d.known_below() < Precision(g.power));
}

// -- orbit equivalence ----------------------------------------------------

// chi on (1/N)Z/Z with chi(1/N) = zeta.
struct Character {
    unsigned modulus = 1;
    FieldElem zeta{1};

    FieldElem operator()(const Rat &s) const
    {
        if (zeta == FieldElem(1))
            return zeta;
        const Rat k = s * Rat(static_cast<long>(modulus));
        if (!is_integer(k))
            fail(errc::conductor_mismatch, "character is not defined on exponent " + to_string(s));
        return zeta.pow(to_long(k.get_num()));
    }
};

inline HahnSeries apply_character(const HahnSeries &a, const Character &chi)
{
    std::vector<Term> t;
    for (const auto &x : a.terms())
        t.push_back({x.exp, x.coeff * chi(x.exp)});
    return HahnSeries(std::move(t), a.known_below());
}

struct OrbitResult {
    std::optional<Character> character;
    bool exact = true; // false when a stream was compared only up to the cap
};

namespace detail {

// chi with b_s = chi(s) a_s on the given terms (supports must agree).
inline std::optional<Character> solve_character(const std::vector<Term> &a, const std::vector<Term> &b)
{
    if (a.size() != b.size())
        return std::nullopt;
    bool trivial = true;
    Int n(1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].exp != b[i].exp)
            return std::nullopt;
        trivial = trivial && a[i].coeff == b[i].coeff;
        mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), a[i].exp.get_den().get_mpz_t());
    }
    if (trivial)
        return Character{1, FieldElem(1)};
    if (n > 4096)
        fail(errc::undetermined, "character search beyond modulus 4096");
    const unsigned N = static_cast<unsigned>(n.get_ui());
    std::vector<std::pair<long, FieldElem>> constraints;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Rat f = frac_rat(a[i].exp) * Rat(static_cast<long>(N));
        constraints.emplace_back(to_long(f.get_num()), b[i].coeff / a[i].coeff);
    }
    const FieldElem root = root_of_unity(N, CycloField(N));
    FieldElem zeta(1);
    for (unsigned j = 0; j < N; ++j, zeta *= root) {
        bool ok = true;
        for (const auto &[e, r] : constraints)
            if (!(zeta.pow(e) == r)) {
                ok = false;
                break;
            }
        if (ok)
            return Character{N, zeta};
    }
    return std::nullopt;
}

} // namespace detail

inline OrbitResult orbit_equivalent(const AlphaDescriptor &a, const AlphaDescriptor &b, const Options &opt = {})
{
    OrbitResult r;
    const bool sa = a.kind() == AlphaKind::stream, sb = b.kind() == AlphaKind::stream;
    if (!sa && !sb) {
        if (a.finite_support() && b.finite_support()) {
            r.character = detail::solve_character(a.known().terms(), b.known().terms());
            return r;
        }
        // chi fixes integer exponents, so orbit mates share a minimal polynomial.
        const auto ma = detail::alpha_minpoly(a, opt), mb = detail::alpha_minpoly(b, opt);
        if (!(*ma == *mb))
            return r;
        Rat bound(1);
        for (const auto *x : {&a, &b})
            if (x->separation())
                bound = std::max<Rat>(bound, Rat(*x->separation() + 1));
        const HahnSeries va = a.value(bound, opt).truncated(Precision(bound));
        const HahnSeries vb = b.value(bound, opt).truncated(Precision(bound));
        r.character = detail::solve_character(va.terms(), vb.terms());
        return r;
    }
    if (sa != sb) {
        const AlphaDescriptor &s = sa ? a : b;
        if (s.transcendental())
            return r; // a transcendental series has no algebraic orbit mate
    }
    r.exact = false;
    const HahnSeries va = a.value(opt.cap, opt).truncated(Precision(opt.cap));
    const HahnSeries vb = b.value(opt.cap, opt).truncated(Precision(opt.cap));
    r.character = detail::solve_character(va.terms(), vb.terms());
    return r;
}

// -- case normalization ---------------------------------------------------

struct NormalizeInput {
    bool contains_t = false;
    bool contains_tinv = false;
    std::optional<long> k; // minimal k with t^k y in A, case i only
};

struct NormalizeResult {
    CaseKind kind;
    Automorphism sigma; // identity for the units case
};

inline NormalizeResult normalize(const NormalizeInput &in)
{
    if (in.contains_t && in.contains_tinv)
        return {CaseKind::units, {}};
    if (!in.contains_t && !in.contains_tinv)
        fail(errc::inconsistent, "an extending maximal subalgebra contains t or 1/t");
    if (!in.k)
        fail(errc::inconsistent, "case i needs the minimal k with t^k y in A");
    return {CaseKind::psi, {in.contains_tinv, *in.k}};
}

// sigma_lambda(t) = t - lambda on a units-case descriptor: alpha -> alpha + lambda.
inline SubalgebraDescriptor translate_lambda(const SubalgebraDescriptor &d, const FieldElem &lambda,
                                             const Options &opt = {})
{
    if (d.kind != CaseKind::units)
        fail(errc::precondition_failed, "translation applies to units-case algebras");
    if (lambda.is_zero())
        return d;
    const HahnSeries c = HahnSeries::constant(lambda);
    AlphaDescriptor moved = d.alpha;
    switch (d.alpha.kind()) {
    case AlphaKind::finite:
        moved = AlphaDescriptor::finite(d.alpha.known() + c);
        break;
    case AlphaKind::algebraic: {
        // m(T, Y - lambda) has root alpha + lambda.
        const LaurentPoly sub = LaurentPoly::y() - LaurentPoly(lambda);
        LaurentPoly m;
        for (const auto &[e, v] : d.alpha.minpoly().terms())
            m += LaurentPoly::monomial(v, e.t, 0) * sub.pow(e.y);
        moved = AlphaDescriptor::algebraic(m, d.alpha.known() + c, d.alpha.field(), opt);
        break;
    }
    case AlphaKind::stream:
        fail(errc::precondition_failed, "stream descriptors cannot be translated");
    }
    SubalgebraDescriptor out = d;
    out.alpha = moved;
    validate(out, opt);
    return out;
}

// supp(alpha) strictly contains {0} and the constant term is nonzero.
inline bool n_condition_check(const AlphaDescriptor &a, const Options &opt)
{
    const HahnSeries v = a.value(Rat(1), opt);
    if (v.terms().empty() || v.terms().front().exp != 0)
        return false;
    if (v.terms().size() > 1 || a.kind() == AlphaKind::stream)
        return v.terms().size() > 1 || !v.is_exact();
    if (v.is_exact())
        return false;
    // Nothing else below 1: look further.
    HahnSeries more = a.value(opt.cap, opt);
    return more.terms().size() > 1 || !more.is_exact();
}

// Lowest t-exponent element... the crucial-ideal parameter: t for psi,
// t - lambda for units.
inline LaurentPoly crucial_parameter(const SubalgebraDescriptor &d, const Options &opt = {})
{
    if (d.kind == CaseKind::psi)
        return apply_automorphism(d.sigma.inverse(), LaurentPoly::t());
    const HahnSeries v = d.alpha.value(Rat(1), opt);
    FieldElem lambda = v.terms().empty() || v.terms().front().exp != 0 ? FieldElem() : v.terms().front().coeff;
    return LaurentPoly::t() - LaurentPoly(lambda);
}

// -- P2 sampling ----------------------------------------------------------

struct P2Report {
    std::size_t trials = 0;
    std::size_t checked = 0;
    std::size_t skipped = 0; // undetermined samples
    std::vector<std::pair<LaurentPoly, LaurentPoly>> counterexamples;
};

struct P2Sampling {
    std::size_t trials = 200;
    unsigned y_degree = 2;
    long t_range = 2;
    std::uint64_t seed = 1;
};

inline LaurentPoly random_element(std::mt19937_64 &rng, unsigned y_degree, long t_lo, long t_hi)
{
    std::uniform_int_distribution<long> coeff(-3, 3), te(t_lo, t_hi);
    std::uniform_int_distribution<unsigned> ye(0, y_degree), count(1, 4);
    LaurentPoly f;
    while (f.is_zero()) {
        const unsigned n = count(rng);
        for (unsigned i = 0; i < n; ++i)
            f += LaurentPoly::monomial(FieldElem(coeff(rng)), te(rng), ye(rng));
    }
    return f;
}

// Random r, q pushed into rq in A by multiplying a factor with the crucial
// parameter; then r in A or q in A must hold.
inline P2Report p2_sample_check(const SubalgebraDescriptor &d, const P2Sampling &s = {}, const Options &opt = {})
{
    P2Report rep;
    std::mt19937_64 rng(s.seed);
    const LaurentPoly pi = crucial_parameter(d, opt);
    const long t_lo = d.poly_subring ? 0 : -s.t_range;
    for (std::size_t i = 0; i < s.trials; ++i) {
        ++rep.trials;
        LaurentPoly r = random_element(rng, s.y_degree, t_lo, s.t_range);
        LaurentPoly q = random_element(rng, s.y_degree, t_lo, s.t_range);
        bool undetermined = false, done = false;
        for (int step = 0; step < 40 && !done; ++step) {
            MembershipResult m = membership(r * q, d, opt);
            if (m.verdict == Verdict::undetermined) {
                undetermined = true;
                break;
            }
            if (m.member()) {
                done = true;
                break;
            }
            if (rng() % 2)
                r *= pi;
            else
                q *= pi;
        }
        if (undetermined || !done) {
            ++rep.skipped;
            continue;
        }
        const MembershipResult mr = membership(r, d, opt), mq = membership(q, d, opt);
        if (mr.verdict == Verdict::undetermined || mq.verdict == Verdict::undetermined) {
            ++rep.skipped;
            continue;
        }
        ++rep.checked;
        if (!mr.member() && !mq.member())
            rep.counterexamples.emplace_back(r, q);
    }
    return rep;
}

} // namespace maxsub
