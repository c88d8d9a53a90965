#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cyclotomic.hpp"

namespace maxsub {

// Exact dense linear algebra over FieldElem, row-major.
using Matrix = std::vector<std::vector<FieldElem>>;
using Vector = std::vector<FieldElem>;

struct RowEchelon {
    Matrix rows;                     // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots; // pivot column of each row
};

inline RowEchelon row_reduce(Matrix m, std::size_t cols)
{
    RowEchelon out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c].is_zero())
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[r]);
        const FieldElem inv = m[r][c].inverse();
        for (auto &x : m[r])
            x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero())
                continue;
            const FieldElem f = m[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (!m[r][j].is_zero())
                    m[i][j] -= f * m[r][j];
        }
        out.pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    out.rows = std::move(m);
    return out;
}

inline std::size_t rank(const Matrix &m, std::size_t cols) { return row_reduce(m, cols).pivots.size(); }

// Basis of {x : m x = 0}.
inline std::vector<Vector> kernel(const Matrix &m, std::size_t cols)
{
    const RowEchelon e = row_reduce(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : e.pivots)
        is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free])
            continue;
        Vector v(cols, FieldElem());
        v[free] = FieldElem(1);
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            v[e.pivots[i]] = -e.rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Some solution of m x = rhs, or nullopt if inconsistent.
inline std::optional<Vector> solve(const Matrix &m, const Vector &rhs, std::size_t cols)
{
    Matrix aug = m;
    for (std::size_t i = 0; i < aug.size(); ++i)
        aug[i].push_back(rhs[i]);
    const RowEchelon e = row_reduce(aug, cols + 1);
    Vector x(cols, FieldElem());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == cols)
            return std::nullopt;
        x[e.pivots[i]] = e.rows[i][cols];
    }
    return x;
}

} // namespace maxsub
