#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cyclotomic.hpp"
#include "error.hpp"
#include "upoly.hpp"

namespace maxsub {

struct Root {
    FieldElem value;
    unsigned multiplicity;
};

namespace detail {

using Real = boost::multiprecision::cpp_bin_float_50;

struct Cx {
    Real re, im;
    Cx() = default;
    Cx(Real r, Real i = 0) : re(std::move(r)), im(std::move(i)) {}
    friend Cx operator+(const Cx &a, const Cx &b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(const Cx &a, const Cx &b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator*(const Cx &a, const Cx &b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cx operator/(const Cx &a, const Cx &b)
    {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Cx conj() const { return {re, -im}; }
    Real norm() const { return sqrt(re * re + im * im); }
};

inline Real to_real(const Rat &q)
{
    return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

inline Cx unit_root(unsigned m, unsigned long e)
{
    const Real ang = 2 * boost::math::constants::pi<Real>() * Real(e % m) / Real(m);
    return {cos(ang), sin(ang)};
}

// Image of x under z -> exp(2 pi i k / m); x must live in Q(zeta_m).
inline Cx embed(const FieldElem &x, unsigned m, unsigned k)
{
    const FieldElem y = x.lifted(m);
    Cx r(0, 0);
    for (std::size_t j = 0; j < y.coords().size(); ++j)
        if (y.coords()[j] != 0)
            r = r + Cx(to_real(y.coords()[j])) * unit_root(m, static_cast<unsigned long>(j) * k);
    return r;
}

// Simultaneous Aberth iteration; input polynomial must be square-free.
inline std::vector<Cx> aberth(const std::vector<Cx> &c)
{
    const std::size_t d = c.size() - 1;
    std::vector<Cx> z(d);
    Real bound = 0;
    for (std::size_t i = 0; i < d; ++i)
        bound = std::max(bound, (c[i] / c[d]).norm());
    const Real radius = 1 + bound;
    for (std::size_t i = 0; i < d; ++i) {
        const Real ang = 2 * boost::math::constants::pi<Real>() * Real(i) / Real(d) + Real("0.4");
        z[i] = Cx(radius * cos(ang), radius * sin(ang));
    }
    const Real tol("1e-45");
    for (int iter = 0; iter < 800; ++iter) {
        Real worst = 0;
        for (std::size_t i = 0; i < d; ++i) {
            Cx p = c[d], dp(0, 0);
            for (std::size_t k = d; k-- > 0;) {
                dp = dp * z[i] + p;
                p = p * z[i] + c[k];
            }
            if (p.norm() == 0)
                continue;
            Cx ratio = p / dp;
            Cx sum(0, 0);
            for (std::size_t j = 0; j < d; ++j)
                if (j != i)
                    sum = sum + Cx(1) / (z[i] - z[j]);
            Cx w = ratio / (Cx(1) - ratio * sum);
            z[i] = z[i] - w;
            worst = std::max(worst, w.norm() / (1 + z[i].norm()));
        }
        if (worst < tol)
            break;
    }
    return z;
}

// Best rational approximation with bounded denominator, if it is close.
inline std::optional<Rat> rationalize(const Real &x)
{
    const Real tol("1e-28");
    if (abs(x) > Real("1e15"))
        return std::nullopt;
    Int h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    Real r = x;
    for (int step = 0; step < 60; ++step) {
        Real fl = floor(r);
        Int a(static_cast<long>(fl.convert_to<long long>()));
        Int h2 = a * h1 + h0, k2 = a * k1 + k0;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (k1 > Int("1000000000000"))
            return std::nullopt;
        Rat cand = make_rat(h1, k1);
        if (abs(to_real(cand) - x) < tol * (1 + abs(x)))
            return cand;
        Real f = r - fl;
        if (f == 0)
            return cand;
        r = 1 / f;
    }
    return std::nullopt;
}

// Complex Gaussian elimination: solves a x = b for square a.
inline std::vector<Cx> complex_solve(std::vector<std::vector<Cx>> a, std::vector<Cx> b)
{
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (a[r][c].norm() > a[p][c].norm())
                p = r;
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c)
                continue;
            Cx f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j)
                a[r][j] = a[r][j] - f * a[c][j];
            b[r] = b[r] - f * b[c];
        }
    }
    for (std::size_t c = 0; c < n; ++c)
        b[c] = b[c] / a[c][c];
    return b;
}

inline void add_unique(std::vector<FieldElem> &out, const FieldElem &x)
{
    for (const auto &y : out)
        if (y == x)
            return;
    out.push_back(x);
}

// Roots in Q(zeta_m) of a square-free polynomial. Each candidate comes from
// numerical roots under the embeddings z -> exp(2 pi i k / m) (one per
// complex-conjugate pair), whose real coordinate vector is recovered and
// rationalized; only exact roots are kept.
inline std::vector<FieldElem> squarefree_roots(const FPoly &g, unsigned m)
{
    std::vector<FieldElem> out;
    const long d = g.degree();
    if (d < 1)
        return out;
    if (d == 1) {
        out.push_back(-g.coeff(0) / g.coeff(1));
        return out;
    }
    std::vector<unsigned> units;
    for (unsigned k = 1; k <= std::max(1u, m); ++k)
        if (std::gcd(k, m) == 1)
            units.push_back(k);
    if (m <= 2)
        units = {1};
    const std::size_t phi = m <= 2 ? 1 : units.size();
    std::vector<unsigned> reps;
    for (auto k : units)
        if (m <= 2 || 2 * k < m)
            reps.push_back(k);

    std::vector<std::vector<Cx>> numeric_roots;
    for (auto k : reps) {
        std::vector<Cx> c;
        for (long i = 0; i <= d; ++i)
            c.push_back(embed(g.coeff(static_cast<std::size_t>(i)), m, k));
        numeric_roots.push_back(aberth(c));
    }

    // V[row][j] = embedding_row(z^j), rows ordered as reps then conjugates.
    std::vector<unsigned> rows = reps;
    if (m > 2)
        for (auto k : reps)
            rows.push_back(m - k);
    std::vector<std::vector<Cx>> vand(phi, std::vector<Cx>(phi));
    for (std::size_t r = 0; r < phi; ++r)
        for (std::size_t j = 0; j < phi; ++j)
            vand[r][j] = m <= 2 ? Cx(m == 2 && j % 2 ? -1 : 1) : unit_root(m, static_cast<unsigned long>(j) * rows[r]);

    std::size_t combos = 1;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        combos *= static_cast<std::size_t>(d);
        if (combos > 2000000)
            fail(errc::incomplete_splitting, "root search space too large for Q(zeta_" + std::to_string(m) + ")");
    }
    std::vector<std::size_t> pick(reps.size(), 0);
    for (std::size_t n = 0; n < combos && out.size() < static_cast<std::size_t>(d); ++n) {
        std::size_t rest = n;
        for (auto &p : pick) {
            p = rest % static_cast<std::size_t>(d);
            rest /= static_cast<std::size_t>(d);
        }
        std::vector<Cx> w;
        for (std::size_t i = 0; i < reps.size(); ++i)
            w.push_back(numeric_roots[i][pick[i]]);
        if (m > 2)
            for (std::size_t i = 0; i < reps.size(); ++i)
                w.push_back(numeric_roots[i][pick[i]].conj());
        std::vector<Cx> x = m <= 2 ? std::vector<Cx>{w[0]} : complex_solve(vand, w);
        if (m <= 2 && abs(w[0].im) > Real("1e-20"))
            continue;
        std::vector<Rat> coords;
        bool ok = true;
        for (const auto &xi : x) {
            if (abs(xi.im) > Real("1e-20")) {
                ok = false;
                break;
            }
            auto q = rationalize(xi.re);
            if (!q) {
                ok = false;
                break;
            }
            coords.push_back(*q);
        }
        if (!ok)
            continue;
        FieldElem cand = m <= 2 ? FieldElem(coords[0]) : FieldElem::from_coords(m, coords);
        if (g.eval(cand).is_zero())
            add_unique(out, cand);
    }
    return out;
}

} // namespace detail

inline unsigned working_conductor(const FPoly &p, const CycloField &field)
{
    unsigned m = field.conductor();
    for (const auto &c : p.coeffs())
        m = std::lcm(m, c.conductor());
    return m;
}

// Roots of p inside the given cyclotomic field, with multiplicities. The
// list is complete within that field; a smaller total multiplicity than
// deg p means p does not split there.
inline std::vector<Root> find_roots(const FPoly &p, const CycloField &field)
{
    if (p.is_zero())
        fail(errc::zero_input, "find_roots of the zero polynomial");
    const unsigned m = working_conductor(p, field);
    std::vector<Root> out;
    for (const auto &[factor, mult] : squarefree_decomposition(p))
        for (auto &r : detail::squarefree_roots(factor, m))
            out.push_back({std::move(r), mult});
    std::sort(out.begin(), out.end(), [](const Root &a, const Root &b) { return repr_less(a.value, b.value); });
    return out;
}

inline unsigned total_multiplicity(const std::vector<Root> &roots)
{
    unsigned n = 0;
    for (const auto &r : roots)
        n += r.multiplicity;
    return n;
}

} // namespace maxsub
