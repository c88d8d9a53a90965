#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "hahn.hpp"
#include "laurent.hpp"
#include "mpoly.hpp"
#include "roots.hpp"

namespace maxsub {

// Two-variable MPoly (first variable in the t slot) as a LaurentPoly;
// second-variable exponents must be nonnegative.
inline LaurentPoly to_laurent(const MPoly &f)
{
    LaurentPoly::Map m;
    for (const auto &[e, c] : f.terms()) {
        if (e.at(1) < 0)
            fail(errc::precondition_failed, "negative power of the second variable");
        m.emplace(Exponent{e[0], static_cast<unsigned>(e[1])}, c);
    }
    return LaurentPoly(std::move(m));
}

inline MPoly to_mpoly(const LaurentPoly &f)
{
    MPoly r(2);
    for (const auto &[e, c] : f.terms())
        r += MPoly::monomial(c, {e.t, static_cast<long>(e.y)});
    return r;
}

class PlaneCurve
{
public:
    explicit PlaneCurve(MPoly f, CycloField field = CycloField(1)) : f_(std::move(f)), field_(field)
    {
        if (f_.nvars() != 2 || !f_.is_polynomial())
            fail(errc::precondition_failed, "curve equation must be a polynomial in x and y");
        if (f_.is_constant())
            fail(errc::precondition_failed, "curve equation must be nonconstant");
        degree_ = f_.total_degree();
        F_ = MPoly(3);
        for (const auto &[e, c] : f_.terms())
            F_ += MPoly::monomial(c, {e[0], e[1], degree_ - e[0] - e[1]});
    }

    const MPoly &equation() const noexcept { return f_; }
    const MPoly &homogenized() const noexcept { return F_; }
    long degree() const noexcept { return degree_; }
    const CycloField &field() const noexcept { return field_; }

private:
    MPoly f_, F_;
    long degree_ = 0;
    CycloField field_;
};

// Homogeneous coordinates, scaled so the last nonzero coordinate is 1.
struct ProjectivePoint {
    std::array<FieldElem, 3> c;

    static ProjectivePoint make(FieldElem x, FieldElem y, FieldElem z)
    {
        ProjectivePoint p{{std::move(x), std::move(y), std::move(z)}};
        std::size_t k = 3;
        while (k > 0 && p.c[k - 1].is_zero())
            --k;
        if (k == 0)
            fail(errc::precondition_failed, "projective point with all coordinates zero");
        const FieldElem s = p.c[k - 1].inverse();
        for (auto &v : p.c)
            v *= s;
        return p;
    }

    bool at_infinity() const { return c[2].is_zero(); }
    friend bool operator==(const ProjectivePoint &a, const ProjectivePoint &b) { return a.c == b.c; }
    std::string str() const { return "(" + c[0].str() + ":" + c[1].str() + ":" + c[2].str() + ")"; }
};

// Zeros of the top-degree form on z = 0. Throws IncompleteSplitting when
// the form does not split over the curve's field.
inline std::vector<ProjectivePoint> points_at_infinity(const PlaneCurve &c)
{
    // Top form f_d(x, y); roots of f_d(x, 1) plus (1:0:0) when y divides f_d.
    std::vector<FieldElem> coeffs(static_cast<std::size_t>(c.degree() + 1));
    for (const auto &[e, v] : c.equation().terms())
        if (e[0] + e[1] == c.degree())
            coeffs[static_cast<std::size_t>(e[0])] = v;
    const FPoly g(coeffs);
    std::vector<ProjectivePoint> out;
    unsigned found = 0;
    if (g.degree() < c.degree()) {
        out.push_back(ProjectivePoint::make(FieldElem(1), FieldElem(0), FieldElem(0)));
        found += static_cast<unsigned>(c.degree() - g.degree());
    }
    const auto roots = g.degree() > 0 ? find_roots(g, c.field()) : std::vector<Root>{};
    for (const auto &r : roots)
        out.push_back(ProjectivePoint::make(r.value, FieldElem(1), FieldElem(0)));
    found += total_multiplicity(roots);
    if (found < static_cast<unsigned>(c.degree()))
        fail(errc::incomplete_splitting, "top-degree form does not split over Q(zeta_" +
                                             std::to_string(working_conductor(g, c.field())) + ")");
    return out;
}

inline void check_on_curve(const PlaneCurve &c, const ProjectivePoint &p)
{
    if (!c.homogenized().eval({p.c[0], p.c[1], p.c[2]}).is_zero())
        fail(errc::point_off_curve, "point " + p.str() + " is not on the curve");
}

inline bool is_smooth_at(const PlaneCurve &c, const ProjectivePoint &p)
{
    check_on_curve(c, p);
    const std::vector<FieldElem> v{p.c[0], p.c[1], p.c[2]};
    for (std::size_t j = 0; j < 3; ++j)
        if (!c.homogenized().partial(j).eval(v).is_zero())
            return true;
    return false;
}

// Local picture at a smooth point at infinity. Chart y = 1 when the
// y-coordinate is nonzero (local coordinates X = x/y - a, Z = z/y), else
// chart x = 1 (Y = y/x, Z = z/x). One local coordinate serves as the
// parameter s and the other is a power series w(s).
struct BranchAtPoint {
    bool chart_y = true;
    FieldElem a;          // x-coordinate of the point in chart y = 1
    bool param_is_z = false;
    LaurentPoly local;    // G(s, w)
};

inline BranchAtPoint branch_at(const PlaneCurve &c, const ProjectivePoint &p)
{
    if (!p.at_infinity())
        fail(errc::precondition_failed, "point " + p.str() + " is not at infinity");
    if (!is_smooth_at(c, p))
        fail(errc::singular_point, "curve is singular at " + p.str());
    BranchAtPoint b;
    b.chart_y = !p.c[1].is_zero();
    b.a = p.c[0];
    // G(U, Z) with U the non-Z local coordinate.
    const MPoly U = MPoly::var(2, 0), Z = MPoly::var(2, 1), one(2, FieldElem(1));
    const MPoly G = b.chart_y ? c.homogenized().substitute({U + MPoly(2, b.a), one, Z})
                              : c.homogenized().substitute({one, U, Z});
    const std::vector<FieldElem> origin{FieldElem(0), FieldElem(0)};
    // If dG/dZ != 0 then Z is a function of U; otherwise U is a function of Z.
    b.param_is_z = G.partial(1).eval(origin).is_zero();
    const MPoly local = b.param_is_z ? G.substitute({MPoly::var(2, 1), MPoly::var(2, 0)}) : G;
    b.local = to_laurent(local);
    return b;
}

// w(s) to precision: the power series root through the origin, by the
// fixed-point step w -> w - G(s, w) / G_w(0, 0), one order per step.
inline HahnSeries branch_series(const BranchAtPoint &b, const Rat &precision, const CycloField &)
{
    const FieldElem c = b.local.coeff(0, 1);
    if (c.is_zero())
        fail(errc::singular_point, "local equation is not solvable for the second coordinate");
    const FieldElem ci = c.inverse();
    const Precision bound(precision);
    HahnSeries w;
    const long steps = to_long(floor_rat(precision)) + 2;
    for (long i = 0; i <= steps; ++i) {
        const HahnSeries r = evaluate_y(b.local, w);
        if (r.is_exact_zero())
            return w;
        const HahnSeries low = r.truncated(bound);
        if (low.terms().empty())
            break;
        w = (w - scale(low, ci)).truncated(bound);
    }
    return HahnSeries(w.terms(), bound);
}

// Series for (x, y) along the branch, all terms below `precision` exact
// where the expansion allows.
inline std::array<HahnSeries, 2> branch_coordinates(const BranchAtPoint &b, const Rat &precision,
                                                    const CycloField &field)
{
    const HahnSeries w = branch_series(b, precision, field);
    const HahnSeries s = HahnSeries::monomial(FieldElem(1), Rat(1));
    const HahnSeries U = b.param_is_z ? w : s;
    const HahnSeries Z = b.param_is_z ? s : w;
    const HahnSeries zi = reciprocal(Z, precision);
    if (b.chart_y)
        return {(U + HahnSeries::constant(b.a)) * zi, zi};
    return {zi, U * zi};
}

inline HahnSeries evaluate_along(const MPoly &h, const std::array<HahnSeries, 2> &xy, const Rat &precision)
{
    std::array<std::optional<HahnSeries>, 2> inv;
    HahnSeries total;
    for (const auto &[e, c] : h.terms()) {
        HahnSeries m = HahnSeries::constant(c);
        for (std::size_t i = 0; i < 2; ++i) {
            if (e[i] > 0) {
                m = m * pow(xy[i], static_cast<unsigned>(e[i]));
            } else if (e[i] < 0) {
                if (!inv[i])
                    inv[i] = reciprocal(xy[i], precision);
                m = m * pow(*inv[i], static_cast<unsigned>(-e[i]));
            }
        }
        total = total + m;
    }
    return total;
}

namespace detail {

// Does the (irreducible) curve equation divide h in k[x, 1/x, y, 1/y]?
inline bool curve_divides(const MPoly &f, const MPoly &h)
{
    if (h.is_zero())
        return true;
    const MPoly cleared = h.shifted({-h.min_degree_in(0), -h.min_degree_in(1)});
    if (f.degree_in(1) > 0)
        return divides_over_rational_functions(to_laurent(f), to_laurent(cleared));
    const MPoly sw = MPoly::var(2, 1), sx = MPoly::var(2, 0);
    return divides_over_rational_functions(to_laurent(f.substitute({sw, sx})), to_laurent(cleared.substitute({sw, sx})));
}

// h modulo f when the y-leading coefficient of f is a constant. The
// difference is a multiple of f, so the restriction to the curve is kept.
inline MPoly reduce_mod_curve(const MPoly &f, MPoly h)
{
    const long d = f.degree_in(1);
    if (d <= 0 || h.is_zero() || !h.is_polynomial())
        return h;
    FieldElem lc;
    for (const auto &[e, v] : f.terms())
        if (e[1] == d) {
            if (e[0] != 0)
                return h;
            lc = v;
        }
    const MPoly fi = f * MPoly(2, lc.inverse());
    while (!h.is_zero() && h.degree_in(1) >= d) {
        const long top = h.degree_in(1);
        MPoly lead(2);
        for (const auto &[e, v] : h.terms())
            if (e[1] == top)
                lead += MPoly::monomial(v, {e[0], top - d});
        h = h - lead * fi;
    }
    return h;
}

} // namespace detail

// Order of h along the branch at p (nullopt when h vanishes on the curve).
inline std::optional<Rat> branch_order(const MPoly &h, const PlaneCurve &c, const ProjectivePoint &p,
                                       const Rat &cap = default_cap())
{
    const BranchAtPoint b = branch_at(c, p);
    if (detail::curve_divides(c.equation(), h))
        return std::nullopt;
    const MPoly r = detail::reduce_mod_curve(c.equation(), h);
    for (Rat prec(4);; prec = Rat(2 * prec)) {
        const auto xy = branch_coordinates(b, prec, c.field());
        const HahnSeries v = evaluate_along(r, xy, prec);
        if (!v.terms().empty())
            return v.terms().front().exp;
        if (v.is_exact_zero())
            return std::nullopt;
        if (!(prec < cap))
            fail(errc::undetermined, "order along the branch exceeds the precision cap");
    }
}

inline bool defined_at(const MPoly &h, const PlaneCurve &c, const ProjectivePoint &p, const Rat &cap = default_cap())
{
    const auto o = branch_order(h, c, p, cap);
    return !o || *o >= 0;
}

// I_p(curve, z = 0) - 1, the intersection multiplicity read off as the order
// of z along the branch.
inline long tangency_order(const PlaneCurve &c, const ProjectivePoint &p, const Rat &cap = default_cap())
{
    const BranchAtPoint b = branch_at(c, p);
    if (b.param_is_z)
        return 0;
    for (Rat prec(4);; prec = Rat(2 * prec)) {
        const HahnSeries w = branch_series(b, prec, c.field());
        if (!w.terms().empty())
            return to_long(floor_rat(w.terms().front().exp)) - 1;
        if (!(prec < cap))
            fail(errc::undetermined, "tangency order exceeds the precision cap");
    }
}

struct NonCoordinateReport {
    bool smooth = false;
    bool tangency_at_least_2 = false;
    bool several_points_at_infinity = false;
    bool all() const { return smooth && tangency_at_least_2 && several_points_at_infinity; }
};

inline NonCoordinateReport section8_preconditions(const PlaneCurve &c, const ProjectivePoint &p)
{
    NonCoordinateReport r;
    r.smooth = is_smooth_at(c, p);
    r.tangency_at_least_2 = r.smooth && p.at_infinity() && tangency_order(c, p) >= 2;
    r.several_points_at_infinity = points_at_infinity(c).size() >= 2;
    return r;
}

// Membership in the preimage of {h defined at p} under reduction mod f.
inline bool noncoordinate_membership(const MPoly &g, const PlaneCurve &c, const ProjectivePoint &p,
                                     const Rat &cap = default_cap())
{
    if (!section8_preconditions(c, p).all())
        fail(errc::precondition_failed, "point is not a smooth point of tangency >= 2 on a curve with "
                                        "several points at infinity");
    if (!g.is_polynomial())
        fail(errc::precondition_failed, "expected a polynomial in x and y");
    return defined_at(g, c, p, cap);
}

} // namespace maxsub
