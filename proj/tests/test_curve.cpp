#include <random>

#include <gtest/gtest.h>

#include <maxsub/curve.hpp>

using namespace maxsub;

namespace {

MPoly X(long e = 1) { return MPoly::var(2, 0, e); }
MPoly Y(long e = 1) { return MPoly::var(2, 1, e); }
MPoly C(long c) { return MPoly(2, FieldElem(c)); }
MPoly M(long a, long b) { return MPoly::monomial(FieldElem(1), {a, b}); }
ProjectivePoint P(long x, long y, long z) { return ProjectivePoint::make(FieldElem(x), FieldElem(y), FieldElem(z)); }

PlaneCurve cubic() { return PlaneCurve(Y() - X(3) + X() * Y(2)); }
PlaneCurve quartic() { return PlaneCurve(Y(3) + X(3) * Y() - X(4)); }

bool contains(const std::vector<ProjectivePoint> &v, const ProjectivePoint &p)
{
    for (const auto &q : v)
        if (q == p)
            return true;
    return false;
}

// Image equation composed with the map, reduced modulo the curve.
bool vanishes_on_curve(const MPoly &target, const MPoly &s, const MPoly &t, const PlaneCurve &c)
{
    return detail::curve_divides(c.equation(), target.substitute({s, t}));
}

// Test-side irreducibility oracle for a monic cubic in y over k[x]: a
// factorization needs a root y = r(x) in k-bar[x] dividing the constant
// term. For the quartic, r = c x^k with k <= 4; f(x, c x^k) = 0 forces every
// x-coefficient (a polynomial in c) to vanish at one nonzero c.
bool quartic_has_linear_factor()
{
    const MPoly f = Y(3) + X(3) * Y() - X(4);
    for (long k = 0; k <= 4; ++k) {
        // Variables (x, c): substitute y = c x^k.
        const MPoly g = f.substitute({X(), Y() * X(k)});
        std::map<long, FPoly> by_x;
        for (const auto &[e, v] : g.terms()) {
            std::vector<FieldElem> cs(static_cast<std::size_t>(e[1] + 1));
            cs.back() = v;
            by_x[e[0]] = by_x[e[0]] + FPoly(cs);
        }
        FPoly common;
        for (const auto &[_, p] : by_x)
            common = gcd(common, p);
        // Strip the factor c (c = 0 means y = 0, not a root since f(x,0) != 0).
        while (common.degree() > 0 && common.coeff(0).is_zero())
            common = divmod(common, FPoly({FieldElem(0), FieldElem(1)})).first;
        if (common.degree() > 0)
            return true;
    }
    return false;
}

} // namespace

TEST(ProjectivePoint, Normalization)
{
    EXPECT_EQ(P(-2, 2, 0).str(), "(-1:1:0)");
    EXPECT_EQ(P(3, 0, 0).str(), "(1:0:0)");
    EXPECT_EQ(P(2, 4, 2).str(), "(1:2:1)");
    EXPECT_THROW(P(0, 0, 0), error);
}

TEST(PointsAtInfinity, Examples)
{
    const auto a = points_at_infinity(cubic());
    ASSERT_EQ(a.size(), 3u);
    for (const auto &p : {P(0, 1, 0), P(1, 1, 0), P(-1, 1, 0)})
        EXPECT_TRUE(contains(a, p)) << p.str();
    const auto b = points_at_infinity(PlaneCurve(Y() - X(2)));
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b[0], P(0, 1, 0));
    const auto c = points_at_infinity(PlaneCurve(X() * Y() - C(1)));
    ASSERT_EQ(c.size(), 2u);
    EXPECT_TRUE(contains(c, P(1, 0, 0)));
    EXPECT_TRUE(contains(c, P(0, 1, 0)));
    // x^2 + y^2 needs i.
    EXPECT_THROW(points_at_infinity(PlaneCurve(X(2) + Y(2) - C(1))), error);
    EXPECT_EQ(points_at_infinity(PlaneCurve(X(2) + Y(2) - C(1), CycloField(4))).size(), 2u);
}

TEST(Smoothness, Examples)
{
    for (const auto &p : points_at_infinity(cubic()))
        EXPECT_TRUE(is_smooth_at(cubic(), p));
    // y^2 z - x^3 has dF/dz = y^2 != 0 at (0:1:0); the cusp is affine.
    EXPECT_TRUE(is_smooth_at(PlaneCurve(Y(2) - X(3)), P(0, 1, 0)));
    EXPECT_FALSE(is_smooth_at(PlaneCurve(Y(2) - X(3)), P(0, 0, 1)));
    // x^2 y - z^3: all partials vanish at (0:1:0).
    EXPECT_FALSE(is_smooth_at(PlaneCurve(X(2) * Y() - C(1)), P(0, 1, 0)));
    EXPECT_TRUE(is_smooth_at(PlaneCurve(Y() - X(2)), P(0, 1, 0)));
    EXPECT_THROW(is_smooth_at(cubic(), P(1, 0, 0)), error);
    try {
        defined_at(X(), PlaneCurve(X(2) * Y() - C(1)), P(0, 1, 0));
        FAIL();
    } catch (const error &e) {
        EXPECT_EQ(e.code(), errc::singular_point);
    }
}

TEST(DefinedAt, CubicExample)
{
    const auto c = cubic();
    const auto p1 = P(0, 1, 0), p2 = P(1, 1, 0), p3 = P(-1, 1, 0);
    EXPECT_TRUE(defined_at(X(), c, p1));
    EXPECT_FALSE(defined_at(Y(), c, p1));
    EXPECT_TRUE(defined_at(X() * Y(), c, p1));
    EXPECT_TRUE(defined_at(C(5), c, p1));
    EXPECT_TRUE(defined_at(X() - Y(), c, p2));
    EXPECT_TRUE(defined_at((X() - Y()) * X(), c, p2));
    EXPECT_FALSE(defined_at(X(), c, p2));
    EXPECT_TRUE(defined_at(X() + Y(), c, p3));
    EXPECT_TRUE(defined_at((X() + Y()) * X(), c, p3));
    // Multiples of the equation vanish on the curve.
    EXPECT_TRUE(defined_at(c.equation() * Y(5), c, p1));
}

TEST(DefinedAt, ImageEquations)
{
    const auto c = cubic();
    const MPoly s = X(), t = Y();
    // Targets in variables (s, t).
    EXPECT_TRUE(vanishes_on_curve(t - s.pow(4) + t * t, X(), X() * Y(), c));
    EXPECT_EQ((t - s.pow(4) + t * t).substitute({X(), X() * Y()}), X() * c.equation());
    EXPECT_TRUE(vanishes_on_curve(s * s - t + C(2) * t * t - t * s * s, X() - Y(), (X() - Y()) * X(), c));
    EXPECT_TRUE(vanishes_on_curve(s * s - t - C(2) * t * t + t * s * s, X() + Y(), (X() + Y()) * X(), c));
    // Generated subalgebra elements stay defined at p1.
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> coeff(-2, 2), ex(0, 3);
    for (int i = 0; i < 30; ++i) {
        MPoly g = C(coeff(rng));
        for (int j = 0; j < 3; ++j)
            g += C(coeff(rng)) * X().pow(static_cast<unsigned>(ex(rng))) * (X() * Y()).pow(static_cast<unsigned>(ex(rng)));
        EXPECT_TRUE(defined_at(g, c, P(0, 1, 0))) << g.str({"x", "y"});
    }
}

TEST(DefinedAt, Hyperbola)
{
    // On xy = 1 at (0:1:0): defined iff the restriction lies in k[x].
    const PlaneCurve c(X() * Y() - C(1));
    for (long a = 0; a <= 6; ++a)
        for (long b = 0; b <= 6; ++b)
            EXPECT_EQ(defined_at(M(a, b), c, P(0, 1, 0)), a >= b) << a << "," << b;
}

TEST(Tangency, Examples)
{
    EXPECT_EQ(tangency_order(PlaneCurve(Y() - X(2)), P(0, 1, 0)), 1);
    EXPECT_EQ(tangency_order(quartic(), P(0, 1, 0)), 2);
    EXPECT_EQ(tangency_order(PlaneCurve(X() * Y() - C(1)), P(0, 1, 0)), 0);
    EXPECT_EQ(tangency_order(PlaneCurve(X() * Y() - C(1)), P(1, 0, 0)), 0);
}

TEST(Tangency, AffineInvariance)
{
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> d(-3, 3);
    for (const auto &f : {Y() - X(2), Y(3) + X(3) * Y() - X(4), Y(2) - X(3) - X() - C(1)}) {
        const long base = tangency_order(PlaneCurve(f), P(0, 1, 0));
        for (int i = 0; i < 10; ++i) {
            long al = d(rng), be = d(rng);
            if (al == 0)
                al = 1;
            if (be == 0)
                be = -1;
            // (x, y) -> (al x + b, be y + g x + e) fixes z = 0 and (0:1:0).
            const MPoly g = f.substitute({C(al) * X() + C(d(rng)), C(be) * Y() + C(d(rng)) * X() + C(d(rng))});
            EXPECT_EQ(tangency_order(PlaneCurve(g), P(0, 1, 0)), base);
        }
    }
}

TEST(NonCoordinate, Preconditions)
{
    ASSERT_FALSE(quartic_has_linear_factor());
    auto r = section8_preconditions(quartic(), P(0, 1, 0));
    EXPECT_TRUE(r.smooth && r.tangency_at_least_2 && r.several_points_at_infinity);
    r = section8_preconditions(PlaneCurve(Y(2) - X(3) - X() - C(1)), P(0, 1, 0));
    EXPECT_TRUE(r.smooth);
    EXPECT_TRUE(r.tangency_at_least_2);
    EXPECT_FALSE(r.several_points_at_infinity);
    r = section8_preconditions(PlaneCurve(Y() - X(2)), P(0, 1, 0));
    EXPECT_TRUE(r.smooth);
    EXPECT_FALSE(r.tangency_at_least_2);
    EXPECT_FALSE(r.several_points_at_infinity);
}

TEST(NonCoordinate, Membership)
{
    const auto c = quartic();
    const auto p = P(0, 1, 0);
    EXPECT_TRUE(noncoordinate_membership(C(3), c, p));
    EXPECT_TRUE(noncoordinate_membership(c.equation() * (X(2) + Y()), c, p));
    // Some low-degree monomial has a pole along the branch.
    bool pole = false;
    for (long a = 0; a <= 3 && !pole; ++a)
        for (long b = 0; b <= 3 && !pole; ++b)
            pole = !noncoordinate_membership(M(a, b), c, p);
    EXPECT_TRUE(pole);
    EXPECT_THROW(noncoordinate_membership(X(), PlaneCurve(Y() - X(2)), p), error);
}

TEST(DefinedAt, ReductionKeepsOrder)
{
    const auto c = quartic();
    const auto p = P(0, 1, 0);
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> coeff(-2, 2), ex(0, 3);
    for (int i = 0; i < 20; ++i) {
        MPoly h = C(coeff(rng)) + X(ex(rng)) * Y(ex(rng));
        const MPoly q = C(coeff(rng)) * X(ex(rng)) * Y(ex(rng));
        const MPoly r = detail::reduce_mod_curve(c.equation(), h + q * c.equation());
        EXPECT_LT(r.degree_in(1), 3);
        EXPECT_TRUE(detail::curve_divides(c.equation(), r - h));
        EXPECT_EQ(branch_order(h, c, p), branch_order(h + q * c.equation(), c, p));
    }
}
