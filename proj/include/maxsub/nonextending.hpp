#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "mpoly.hpp"

namespace maxsub {

struct FinitelyPresentedAlgebra {
    std::vector<std::string> names;
    std::vector<MPoly> relations;
    std::vector<bool> laurent; // per variable; empty means none

    std::size_t nvars() const { return names.size(); }
    bool is_laurent(std::size_t j) const { return j < laurent.size() && laurent[j]; }
};

struct ClosedPoint {
    std::vector<FieldElem> coords;
};

struct TangentVector {
    ClosedPoint base;
    std::vector<FieldElem> components;
};

inline void check_point(const FinitelyPresentedAlgebra &R, const ClosedPoint &p)
{
    if (p.coords.size() != R.nvars())
        fail(errc::point_off_variety, "point has " + std::to_string(p.coords.size()) + " coordinates, expected " +
                                          std::to_string(R.nvars()));
    for (std::size_t j = 0; j < R.nvars(); ++j)
        if (R.is_laurent(j) && p.coords[j].is_zero())
            fail(errc::point_off_variety, "invertible variable " + R.names[j] + " is zero at the point");
    for (const auto &g : R.relations)
        if (!g.eval(p.coords).is_zero())
            fail(errc::point_off_variety, "point does not satisfy relation " + g.str(R.names));
}

// D_v f at the base point.
inline FieldElem directional_derivative(const MPoly &f, const TangentVector &v)
{
    FieldElem s;
    for (std::size_t j = 0; j < v.components.size(); ++j)
        if (!v.components[j].is_zero())
            s += v.components[j] * f.partial(j).eval(v.base.coords);
    return s;
}

inline void check_tangent(const FinitelyPresentedAlgebra &R, const TangentVector &v)
{
    check_point(R, v.base);
    if (v.components.size() != R.nvars())
        fail(errc::invalid_tangent, "tangent vector has the wrong number of components");
    bool nonzero = false;
    for (const auto &c : v.components)
        nonzero = nonzero || !c.is_zero();
    if (!nonzero)
        fail(errc::invalid_tangent, "tangent vector is zero");
    for (const auto &g : R.relations)
        if (!directional_derivative(g, v).is_zero())
            fail(errc::invalid_tangent, "vector is not tangent to relation " + g.str(R.names));
}

inline bool glue_membership(const FinitelyPresentedAlgebra &R, const MPoly &f, const ClosedPoint &x1,
                            const ClosedPoint &x2)
{
    check_point(R, x1);
    check_point(R, x2);
    if (x1.coords == x2.coords)
        fail(errc::precondition_failed, "glued points must differ");
    return f.eval(x1.coords) == f.eval(x2.coords);
}

inline bool tangent_membership(const FinitelyPresentedAlgebra &R, const MPoly &f, const TangentVector &v)
{
    check_tangent(R, v);
    return directional_derivative(f, v).is_zero();
}

struct GlueConstruction {
    FinitelyPresentedAlgebra algebra;
    ClosedPoint x1, x2;
};
struct TangentConstruction {
    FinitelyPresentedAlgebra algebra;
    TangentVector v;
};
// Residue field extension case; no description is available.
struct FieldExtensionConstruction {
    FinitelyPresentedAlgebra algebra;
};
using Construction = std::variant<GlueConstruction, TangentConstruction, FieldExtensionConstruction>;

// The linear functional whose kernel is the subalgebra.
inline FieldElem construction_functional(const Construction &c, const MPoly &f)
{
    if (auto g = std::get_if<GlueConstruction>(&c))
        return f.eval(g->x1.coords) - f.eval(g->x2.coords);
    if (auto t = std::get_if<TangentConstruction>(&c))
        return directional_derivative(f, t->v);
    fail(errc::unsupported_construction, "residue field extensions have no membership oracle");
}

inline void validate(const Construction &c)
{
    if (auto g = std::get_if<GlueConstruction>(&c)) {
        check_point(g->algebra, g->x1);
        check_point(g->algebra, g->x2);
        if (g->x1.coords == g->x2.coords)
            fail(errc::precondition_failed, "glued points must differ");
    } else if (auto t = std::get_if<TangentConstruction>(&c)) {
        check_tangent(t->algebra, t->v);
    } else {
        fail(errc::unsupported_construction, "residue field extensions have no membership oracle");
    }
}

inline bool construction_membership(const Construction &c, const MPoly &f)
{
    validate(c);
    return construction_functional(c, f).is_zero();
}

inline const FinitelyPresentedAlgebra &construction_algebra(const Construction &c)
{
    return std::visit([](const auto &x) -> const FinitelyPresentedAlgebra & { return x.algebra; }, c);
}

// Basis of the members of total degree <= d among ambient polynomials
// (relations are not reduced away).
inline std::vector<MPoly> filtered_basis(const Construction &c, long d)
{
    if (d < 0)
        fail(errc::precondition_failed, "degree must be nonnegative");
    validate(c);
    const std::size_t n = construction_algebra(c).nvars();
    const auto monos = monomials_up_to(n, d);
    Matrix row(1, Vector(monos.size()));
    for (std::size_t i = 0; i < monos.size(); ++i)
        row[0][i] = construction_functional(c, MPoly::monomial(FieldElem(1), monos[i]));
    std::vector<MPoly> out;
    for (const auto &v : kernel(row, monos.size())) {
        MPoly f(n);
        for (std::size_t i = 0; i < monos.size(); ++i)
            f += MPoly::monomial(v[i], monos[i]);
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace maxsub
