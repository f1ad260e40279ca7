#pragma once

// Small dense exact linear algebra: reduced row echelon form, rank, one
// particular solution, and a deterministic nullspace basis. Everything is
// fraction-free in spirit but computed directly over Rational, which is fine
// at the sizes this library needs (a handful of rows and columns).

#include <algorithm>
#include <optional>
#include <vector>

#include "lv3/rational.hpp"

namespace lv3 {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

struct Echelon {
    Mat rows;                    // reduced row echelon form
    std::vector<int> pivot_col;  // one entry per nonzero row
};

inline Echelon rref(Mat m) {
    Echelon out;
    std::size_t nrows = m.size();
    std::size_t ncols = nrows ? m[0].size() : 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < nrows; ++col) {
        std::size_t piv = row;
        while (piv < nrows && m[piv][col].is_zero())
            ++piv;
        if (piv == nrows)
            continue;
        std::swap(m[row], m[piv]);
        Rational inv = m[row][col].inv();
        for (std::size_t c = col; c < ncols; ++c)
            m[row][c] *= inv;
        for (std::size_t r = 0; r < nrows; ++r) {
            if (r == row || m[r][col].is_zero())
                continue;
            Rational f = m[r][col];
            for (std::size_t c = col; c < ncols; ++c)
                m[r][c] -= f * m[row][c];
        }
        out.pivot_col.push_back(static_cast<int>(col));
        ++row;
    }
    m.resize(row);
    out.rows = std::move(m);
    return out;
}

inline int rank(const Mat& m) { return static_cast<int>(rref(m).pivot_col.size()); }

// Solves A x = b; returns the solution with zeros in the free coordinates.
inline std::optional<Vec> solve(const Mat& a, const Vec& b) {
    std::size_t nrows = a.size();
    std::size_t ncols = nrows ? a[0].size() : 0;
    Mat aug = a;
    for (std::size_t r = 0; r < nrows; ++r)
        aug[r].push_back(b[r]);
    Echelon e = rref(std::move(aug));
    for (std::size_t r = 0; r < e.rows.size(); ++r)
        if (e.pivot_col[r] == static_cast<int>(ncols))
            return std::nullopt;  // inconsistent: pivot in the augmented column
    Vec x(ncols, Rational(0));
    for (std::size_t r = 0; r < e.rows.size(); ++r)
        x[static_cast<std::size_t>(e.pivot_col[r])] = e.rows[r][ncols];
    return x;
}

// Basis of the right nullspace; one vector per free column, unit entry at the
// free column, ordered by that column.
inline std::vector<Vec> nullspace(const Mat& a) {
    std::size_t ncols = a.empty() ? 0 : a[0].size();
    Echelon e = rref(a);
    std::vector<bool> is_pivot(ncols, false);
    for (int pc : e.pivot_col)
        is_pivot[static_cast<std::size_t>(pc)] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free])
            continue;
        Vec v(ncols, Rational(0));
        v[free] = Rational(1);
        for (std::size_t r = 0; r < e.rows.size(); ++r)
            v[static_cast<std::size_t>(e.pivot_col[r])] = -e.rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline bool in_span(const std::vector<Vec>& basis, const Vec& v) {
    if (basis.empty())
        return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c.is_zero(); });
    Mat m;  // columns are basis vectors; solve for coordinates
    std::size_t dim = v.size();
    for (std::size_t r = 0; r < dim; ++r) {
        Vec row;
        for (const Vec& b : basis)
            row.push_back(b[r]);
        m.push_back(std::move(row));
    }
    return solve(m, v).has_value();
}

inline bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    for (const Vec& v : a)
        if (!in_span(b, v))
            return false;
    for (const Vec& v : b)
        if (!in_span(a, v))
            return false;
    return true;
}

}  // namespace lv3
