#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "error.hpp"
#include "hahn.hpp"
#include "laurent.hpp"
#include "roots.hpp"
#include "upoly.hpp"

namespace maxsub {

struct PolygonEdge {
    unsigned left, right; // y-degrees of the end points
    Rat slope;            // valuation of the roots this edge accounts for
    unsigned length() const { return right - left; }
};

struct NewtonPolygon {
    std::vector<std::pair<unsigned, Rat>> vertices; // (y-degree, t-order), increasing degree
    std::vector<PolygonEdge> edges;                 // slopes strictly increasing
};

// Lower convex hull of {(j, v(c_j)) : c_j != 0}. Coefficients must have
// determinable valuations.
inline NewtonPolygon newton_polygon(const std::vector<HahnSeries> &coeffs)
{
    std::vector<std::pair<unsigned, Rat>> pts;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        if (!coeffs[j].is_exact_zero())
            pts.emplace_back(static_cast<unsigned>(j), coeffs[j].valuation());
    if (pts.empty())
        fail(errc::zero_input, "Newton polygon of the zero polynomial");
    std::vector<std::pair<unsigned, Rat>> hull;
    for (const auto &p : pts) {
        while (hull.size() >= 2) {
            const auto &a = hull[hull.size() - 2], &b = hull.back();
            // Drop b unless it lies strictly below segment a-p.
            Rat cross = Rat(b.second - a.second) * Rat(p.first - a.first) -
                        Rat(p.second - a.second) * Rat(b.first - a.first);
            if (cross >= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    NewtonPolygon np;
    np.vertices = hull;
    for (std::size_t i = hull.size(); i-- > 1;) {
        const auto &l = hull[i - 1], &r = hull[i];
        np.edges.push_back({l.first, r.first, Rat(Rat(l.second - r.second) / Rat(r.first - l.first))});
    }
    return np;
}

inline NewtonPolygon newton_polygon(const LaurentPoly &p)
{
    if (p.is_zero())
        fail(errc::zero_input, "Newton polygon of the zero polynomial");
    return newton_polygon(y_coefficients(p));
}

struct PuiseuxBranch {
    HahnSeries expansion; // finite prefix; exact when the root is a Puiseux polynomial
    unsigned multiplicity = 1;
    unsigned ramification = 1;
    unsigned conductor = 1; // cyclotomic field the coefficients were found in
};

// -- bivariate helpers over k[t][y] -------------------------------------

namespace detail {

inline FPoly content(const BiPoly &p)
{
    FPoly g;
    for (const auto &c : p.coeffs())
        g = gcd(g, c);
    return g;
}

inline BiPoly primitive_part(const BiPoly &p)
{
    if (p.is_zero())
        return p;
    const FPoly g = content(p);
    std::vector<FPoly> c;
    for (const auto &x : p.coeffs())
        c.push_back(divmod(x, g).first);
    BiPoly r(std::move(c));
    // Fix the unit: leading coefficient of the leading coefficient is 1.
    const FieldElem lc = r.lead().lead();
    return r.scaled(FPoly(lc.inverse()));
}

// a / b in k[t][y] where b divides a.
inline BiPoly exact_div(const BiPoly &a, const BiPoly &b)
{
    if (b.is_zero())
        fail(errc::zero_division, "bivariate division by zero");
    std::vector<FPoly> rem = a.coeffs();
    const std::size_t db = static_cast<std::size_t>(b.degree());
    if (rem.size() <= db) {
        if (!a.is_zero())
            fail(errc::inconsistent, "bivariate division is not exact");
        return BiPoly();
    }
    std::vector<FPoly> q(rem.size() - db);
    for (std::size_t k = q.size(); k-- > 0;) {
        auto [c, r] = divmod(rem[k + db], b.lead());
        if (!r.is_zero())
            fail(errc::inconsistent, "bivariate division is not exact");
        if (c.is_zero())
            continue;
        for (std::size_t j = 0; j <= db; ++j)
            rem[k + j] -= c * b.coeffs()[j];
        q[k] = std::move(c);
    }
    for (std::size_t j = 0; j < db; ++j)
        if (!rem[j].is_zero())
            fail(errc::inconsistent, "bivariate division is not exact");
    return BiPoly(std::move(q));
}

// gcd in k(t)[y] by the primitive remainder sequence. Exact but the
// t-degrees of the remainders grow quickly; used as a fallback.
inline BiPoly prs_gcd(BiPoly a, BiPoly b)
{
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.degree() < b.degree())
        std::swap(a, b);
    while (!b.is_zero()) {
        BiPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        b = primitive_part(r);
    }
    return primitive_part(a);
}

inline FPoly at_t(const BiPoly &p, const FieldElem &x)
{
    std::vector<FieldElem> c;
    for (const auto &f : p.coeffs())
        c.push_back(f.eval(x));
    return FPoly(std::move(c));
}

inline long t_degree(const BiPoly &p)
{
    long d = 0;
    for (const auto &c : p.coeffs())
        d = std::max(d, c.degree());
    return d;
}

// Newton form through (xs[i], vs[i]).
inline FPoly interpolate(const std::vector<FieldElem> &xs, std::vector<FieldElem> vs)
{
    const std::size_t n = xs.size();
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n - 1; i >= k; --i)
            vs[i] = (vs[i] - vs[i - 1]) / (xs[i] - xs[i - k]);
    FPoly r;
    for (std::size_t i = n; i-- > 0;)
        r = r * FPoly(std::vector<FieldElem>{-xs[i], FieldElem(1)}) + FPoly(vs[i]);
    return r;
}

inline bool divides(const BiPoly &d, const BiPoly &a)
{
    try {
        exact_div(a, d);
        return true;
    } catch (const error &) {
        return false;
    }
}

// gcd in k(t)[y], returned primitive in k[t][y]. Specializes t at integer
// points where both leading coefficients survive, interpolates
// gamma * (monic gcd) with gamma = gcd of the leading coefficients, and
// keeps the result only if it divides both inputs.
inline BiPoly primitive_gcd(BiPoly a, BiPoly b)
{
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.is_zero() || b.is_zero())
        return a.is_zero() ? b : a;
    const BiPoly one(FPoly(FieldElem(1)));
    if (a.degree() == 0 || b.degree() == 0)
        return one;
    const FPoly gamma = gcd(a.lead(), b.lead());
    const long bound = gamma.degree() + std::min(t_degree(a), t_degree(b));
    std::vector<FieldElem> xs;
    std::vector<FPoly> gs;
    long e = -1;
    for (long k = 1; k < 20 * bound + 200; ++k) {
        const FieldElem x(k % 2 ? (k + 1) / 2 : -(k / 2));
        const FieldElem gx = gamma.eval(x);
        if (gx.is_zero() || a.lead().eval(x).is_zero() || b.lead().eval(x).is_zero())
            continue;
        const FPoly g = gcd(at_t(a, x), at_t(b, x));
        if (g.degree() == 0)
            return one;
        if (e < 0 || g.degree() < e) {
            xs.clear();
            gs.clear();
            e = g.degree();
        } else if (g.degree() > e) {
            continue;
        }
        xs.push_back(x);
        gs.push_back(g.scaled(gx));
        if (static_cast<long>(xs.size()) < bound + 1)
            continue;
        std::vector<FPoly> coeffs;
        for (long j = 0; j <= e; ++j) {
            std::vector<FieldElem> vs;
            for (const auto &h : gs)
                vs.push_back(h.coeffs()[static_cast<std::size_t>(j)]);
            coeffs.push_back(interpolate(xs, std::move(vs)));
        }
        const BiPoly h = primitive_part(BiPoly(std::move(coeffs)));
        if (divides(h, a) && divides(h, b))
            return h;
    }
    return prs_gcd(a, b);
}

} // namespace detail

// Square-free decomposition over k(t): pairs (g_i, i), g_i primitive in
// k[t][y] of positive y-degree.
inline std::vector<std::pair<BiPoly, unsigned>> bivariate_squarefree(const BiPoly &p)
{
    using namespace detail;
    std::vector<std::pair<BiPoly, unsigned>> out;
    const BiPoly a = primitive_part(p);
    if (a.degree() < 1)
        return out;
    const BiPoly b = a.derivative();
    const BiPoly c = primitive_gcd(a, b);
    BiPoly w = exact_div(a, c);
    BiPoly y = exact_div(b, c);
    BiPoly z = y - w.derivative();
    for (unsigned i = 1; w.degree() >= 1; ++i) {
        BiPoly g = primitive_gcd(w, z);
        if (g.degree() >= 1)
            out.emplace_back(g, i);
        w = exact_div(w, g);
        y = exact_div(z, g);
        z = y - w.derivative();
    }
    return out;
}

// -- expansion ------------------------------------------------------------

namespace detail {

inline unsigned long binomial(unsigned n, unsigned k)
{
    unsigned long r = 1;
    for (unsigned i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// q(z + c t^s) as coefficient list in z.
inline std::vector<HahnSeries> taylor_shift(const std::vector<HahnSeries> &q, const FieldElem &c, const Rat &s)
{
    const std::size_t n = q.size();
    std::vector<FieldElem> cpow{FieldElem(1)};
    for (std::size_t m = 1; m < n; ++m)
        cpow.push_back(cpow.back() * c);
    std::vector<HahnSeries> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Term> acc;
        for (std::size_t j = k; j < n; ++j) {
            if (q[j].is_exact_zero())
                continue;
            const std::size_t m = j - k;
            const FieldElem f = cpow[m] * FieldElem(static_cast<long>(binomial(static_cast<unsigned>(j), static_cast<unsigned>(k))));
            const Rat e = s * static_cast<long>(m);
            for (const auto &t : q[j].terms())
                acc.push_back({Rat(t.exp + e), t.coeff * f});
        }
        out[k] = series_from_terms(acc);
    }
    return out;
}

inline unsigned ramification_of(const std::vector<Term> &terms)
{
    unsigned long n = 1;
    for (const auto &t : terms)
        n = std::lcm(n, t.exp.get_den().get_ui());
    return static_cast<unsigned>(n);
}

struct Expander {
    Rat precision;
    CycloField field;
    unsigned multiplicity;
    std::vector<PuiseuxBranch> out;

    void emit(std::vector<Term> prefix, Precision known_below)
    {
        PuiseuxBranch b;
        b.ramification = ramification_of(prefix);
        b.expansion = HahnSeries(std::move(prefix), std::move(known_below));
        b.multiplicity = multiplicity;
        b.conductor = field.conductor();
        out.push_back(std::move(b));
    }

    // Roots z of q with v(z) > floor (all roots if floor is empty); they
    // number cluster. The prefix is the part of the root already fixed.
    void expand(const std::vector<HahnSeries> &q, const std::vector<Term> &prefix, const std::optional<Rat> &floor,
                unsigned cluster)
    {
        const NewtonPolygon np = newton_polygon(q);
        const unsigned zero_roots = np.vertices.front().first;
        if (zero_roots > 1)
            fail(errc::inconsistent, "expansion input is not square-free");
        if (zero_roots == 1)
            emit(prefix, Precision::infinity());
        std::vector<PolygonEdge> edges;
        unsigned count = zero_roots;
        for (const auto &e : np.edges)
            if (!floor || *floor < e.slope) {
                edges.push_back(e);
                count += e.length();
            }
        if (count != cluster)
            fail(errc::inconsistent, "Newton polygon does not account for the root cluster");

        if (cluster == 1 && zero_roots == 0) {
            const PolygonEdge &e = edges.front();
            const Rat o0 = q[0].valuation();
            if (precision < e.slope && precision < o0) {
                // Known below e.slope; see whether one more term closes it.
                const FieldElem c = -q[0].coeff(o0) / q[1].coeff(q[1].valuation());
                if (taylor_shift(q, c, e.slope)[0].is_exact_zero()) {
                    std::vector<Term> full = prefix;
                    full.push_back({e.slope, c});
                    emit(std::move(full), Precision::infinity());
                } else {
                    emit(prefix, Precision(e.slope));
                }
                return;
            }
        }

        for (const auto &e : edges) {
            std::vector<FieldElem> ec(e.length() + 1, FieldElem());
            const Rat o_left = q[e.left].valuation();
            for (unsigned j = e.left; j <= e.right; ++j) {
                if (q[j].is_exact_zero())
                    continue;
                ec[j - e.left] = q[j].coeff(Rat(o_left - e.slope * static_cast<long>(j - e.left)));
            }
            const FPoly edge_poly(ec);
            const auto roots = find_roots(edge_poly, field);
            unsigned found = 0;
            for (const auto &r : roots)
                if (!r.value.is_zero())
                    found += r.multiplicity;
            if (found < e.length())
                fail(errc::incomplete_splitting, "edge polynomial " + describe(edge_poly) +
                                                     " does not split in Q(zeta_" +
                                                     std::to_string(field.conductor()) + ")");
            for (const auto &r : roots) {
                if (r.value.is_zero())
                    continue;
                std::vector<Term> next = prefix;
                next.push_back({e.slope, r.value});
                expand(taylor_shift(q, r.value, e.slope), next, e.slope, r.multiplicity);
            }
        }
    }

    static std::string describe(const FPoly &p)
    {
        std::vector<std::pair<FieldElem, std::string>> parts;
        for (std::size_t i = p.coeffs().size(); i-- > 0;) {
            if (p.coeffs()[i].is_zero())
                continue;
            parts.emplace_back(p.coeffs()[i], i == 0 ? "" : (i == 1 ? "c" : "c^" + std::to_string(i)));
        }
        return format_terms(parts);
    }
};

inline bool branch_less(const PuiseuxBranch &a, const PuiseuxBranch &b)
{
    const auto &x = a.expansion.terms(), &y = b.expansion.terms();
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
        if (x[i].exp != y[i].exp)
            return x[i].exp < y[i].exp;
        if (x[i].coeff != y[i].coeff)
            return repr_less(x[i].coeff, y[i].coeff);
    }
    return x.size() < y.size();
}

} // namespace detail

// Roots of P in y as Puiseux series, each known past precision with
// residual valuation above precision (or exact). Square-free
// decomposition first; multiplicities are attached afterwards.
inline std::vector<PuiseuxBranch> puiseux_expand(const LaurentPoly &p, const Rat &precision,
                                                 const CycloField &field = CycloField(1))
{
    if (p.is_zero())
        fail(errc::zero_input, "Puiseux expansion of the zero polynomial");
    std::vector<PuiseuxBranch> out;
    for (const auto &[g, mult] : bivariate_squarefree(to_bipoly(p).poly)) {
        detail::Expander ex{precision, field, mult, {}};
        std::vector<HahnSeries> q = y_coefficients(from_bipoly(g));
        ex.expand(q, {}, std::nullopt, static_cast<unsigned>(g.degree()));
        for (auto &b : ex.out)
            out.push_back(std::move(b));
    }
    std::sort(out.begin(), out.end(), detail::branch_less);
    return out;
}

// max over pairs of v(a_i - a_j); beyond it the expansions separate.
inline Rat separation_precision(const std::vector<PuiseuxBranch> &branches)
{
    if (branches.size() < 2)
        fail(errc::single_branch, "separation needs at least two branches");
    std::optional<Rat> best;
    for (std::size_t i = 0; i < branches.size(); ++i)
        for (std::size_t j = i + 1; j < branches.size(); ++j) {
            HahnSeries d = branches[i].expansion - branches[j].expansion;
            if (d.is_exact_zero())
                fail(errc::single_branch, "two branches coincide");
            Rat v;
            try {
                v = d.valuation();
            } catch (const zero_or_undetermined &) {
                fail(errc::insufficient_precision, "branches agree on their whole known prefix");
            }
            if (!best || *best < v)
                best = v;
        }
    return *best;
}

// p evaluated at the branch's known terms, taken as an exact polynomial.
inline HahnSeries residual(const LaurentPoly &p, const PuiseuxBranch &b)
{
    return evaluate_y(p, HahnSeries(b.expansion.terms()));
}

} // namespace maxsub
