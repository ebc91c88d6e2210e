#pragma once

// Nullspaces of matrices over the parameter field by fraction-free
// (Bareiss) elimination.

#include "param_elem.hpp"

#include <vector>

namespace rspb {

using Matrix = std::vector<std::vector<ParamElem>>;

namespace detail {

// Scale each row by the lcm of its denominators so that entries become
// polynomials in p (only when no entry involves w).
inline void clear_row_denominators(Matrix& a) {
    for (auto& row : a) {
        bool ext = false;
        for (const auto& e : row) ext = ext || e.has_ext();
        if (ext) continue;
        ParamPoly l(1);
        for (const auto& e : row) {
            if (e.is_zero()) continue;
            ParamPoly d = e.base().denominator();
            if (d.degree() == 0) continue;
            l = divide_exact(l * d, gcd(l, d));
        }
        if (l.degree() == 0) continue;
        ParamElem s{ParamFrac(l)};
        for (auto& e : row)
            if (!e.is_zero()) e *= s;
    }
}

}  // namespace detail

// Row echelon form by Bareiss elimination; returns pivot columns.
inline std::vector<int> bareiss_echelon(Matrix& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    detail::clear_row_denominators(a);
    size_t rows = a.size(), cols = a[0].size();
    ParamElem prev(1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        const ParamElem piv = a[r][c];
        for (size_t i = r + 1; i < rows; ++i) {
            const ParamElem f = a[i][c];
            for (size_t j = c; j < cols; ++j) {
                ParamElem v = piv * a[i][j];
                if (!f.is_zero() && !a[r][j].is_zero()) v -= f * a[r][j];
                a[i][j] = v.is_zero() ? v : v / prev;
            }
        }
        // rows above the current one keep their values; Bareiss divides
        // only the rows being eliminated
        prev = piv;
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    a.resize(r);
    return pivots;
}

// Basis of {v : a v = 0}, one vector per free column.
inline std::vector<std::vector<ParamElem>> nullspace(Matrix a, size_t cols) {
    std::vector<int> pivots = bareiss_echelon(a);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::vector<ParamElem>> basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<ParamElem> v(cols);
        v[f] = ParamElem(1);
        for (size_t k = pivots.size(); k-- > 0;) {
            int pc = pivots[k];
            ParamElem acc;
            for (size_t j = pc + 1; j < cols; ++j)
                if (!a[k][j].is_zero() && !v[j].is_zero()) acc += a[k][j] * v[j];
            v[pc] = -acc / a[k][pc];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace rspb
