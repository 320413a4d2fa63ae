#pragma once

#include <cstddef>
#include <vector>

#include "germlab/unipoly.hpp"

namespace germlab {

template <class T>
using Mat = std::vector<std::vector<T>>;

/// Row echelon form over a field with deterministic pivoting: within each
/// column the first nonzero row (lowest index) wins. Determinism here is a
/// contract, not a convenience; verdicts must be bit-identical across runs.
template <class K>
struct Echelon {
    Mat<K> m;
    std::vector<std::size_t> pivot_cols;  // one per pivot row, ascending
    std::size_t rank = 0;
};

template <class K>
Echelon<K> echelon_field(Mat<K> a) {
    Echelon<K> out;
    if (a.empty()) return out;
    std::size_t rows = a.size(), cols = a[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!field_is_zero(a[i][c])) {
                pivot = i;
                break;
            }
        if (pivot == rows) continue;
        std::swap(a[r], a[pivot]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (field_is_zero(a[i][c])) continue;
            K factor = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= factor * a[r][j];
            a[i][c] = K(0);
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.rank = r;
    out.m = std::move(a);
    return out;
}

template <class K>
std::size_t rank_field(const Mat<K>& a) {
    return echelon_field(a).rank;
}

template <class K>
struct LinearSolution {
    bool consistent = false;
    std::vector<K> x;  // free unknowns at zero; best-effort when inconsistent
};

/// Solves A x = b over a field. Free unknowns are set to zero. When the
/// system is inconsistent the returned x still satisfies every consistent
/// row, which callers use to form an exact residual.
template <class K>
LinearSolution<K> solve_field(const Mat<K>& a, const std::vector<K>& b) {
    LinearSolution<K> out;
    std::size_t rows = a.size();
    std::size_t cols = rows == 0 ? 0 : a[0].size();
    out.x.assign(cols, K(0));
    if (rows == 0) {
        out.consistent = true;
        return out;
    }
    Mat<K> aug = a;
    for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    Echelon<K> ech = echelon_field(std::move(aug));
    out.consistent = true;
    for (std::size_t i = ech.rank; i < rows; ++i)
        if (!field_is_zero(ech.m[i][cols])) out.consistent = false;
    // also inconsistent when a pivot landed in the rhs column
    if (!ech.pivot_cols.empty() && ech.pivot_cols.back() == cols) {
        out.consistent = false;
        ech.pivot_cols.pop_back();
        --ech.rank;
    }
    for (std::size_t i = ech.rank; i-- > 0;) {
        std::size_t p = ech.pivot_cols[i];
        K acc = ech.m[i][cols];
        for (std::size_t j = p + 1; j < cols; ++j)
            if (!field_is_zero(ech.m[i][j])) acc -= ech.m[i][j] * out.x[j];
        out.x[p] = acc / ech.m[i][p];
    }
    return out;
}

/// Basis of the (right) nullspace of A over a field.
template <class K>
std::vector<std::vector<K>> nullspace_field(const Mat<K>& a) {
    std::vector<std::vector<K>> basis;
    if (a.empty()) return basis;
    std::size_t cols = a[0].size();
    Echelon<K> ech = echelon_field(a);
    // reduce upwards to RREF
    for (std::size_t i = ech.rank; i-- > 0;) {
        std::size_t p = ech.pivot_cols[i];
        K inv = K(1) / ech.m[i][p];
        for (std::size_t j = p; j < cols; ++j) ech.m[i][j] = ech.m[i][j] * inv;
        for (std::size_t k = 0; k < i; ++k) {
            K f = ech.m[k][p];
            if (field_is_zero(f)) continue;
            for (std::size_t j = p; j < cols; ++j) ech.m[k][j] -= f * ech.m[i][j];
        }
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : ech.pivot_cols) is_pivot[c] = true;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<K> v(cols, K(0));
        v[free] = K(1);
        for (std::size_t i = 0; i < ech.rank; ++i)
            v[ech.pivot_cols[i]] = -ech.m[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// --- fraction-free elimination over Q[t] -------------------------------------

struct ParamSolution {
    bool consistent = false;
    std::vector<RatFunc> x;  // free unknowns at zero; best-effort otherwise
};

/// Bareiss (fraction-free) elimination for matrices with polynomial-in-t
/// entries, followed by back-substitution in Q(t). Entries stay polynomial
/// throughout the elimination; fractions appear only in the solution.
inline ParamSolution solve_bareiss_qt(Mat<UniPoly<Rat>> a,
                                      const std::vector<UniPoly<Rat>>& b) {
    using P = UniPoly<Rat>;
    ParamSolution out;
    std::size_t rows = a.size();
    std::size_t cols = rows == 0 ? 0 : a[0].size();
    out.x.assign(cols, RatFunc(0));
    if (rows == 0) {
        out.consistent = true;
        return out;
    }
    for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    std::size_t width = cols + 1;

    std::vector<std::size_t> pivot_cols;
    P prev = P::one();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!a[i][c].is_zero()) {
                pivot = i;
                break;
            }
        if (pivot == rows) continue;
        std::swap(a[r], a[pivot]);
        const P piv = a[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < width; ++j)
                a[i][j] = exact_div_field(a[i][j] * piv - a[i][c] * a[r][j], prev);
            a[i][c] = P();
        }
        prev = piv;
        pivot_cols.push_back(c);
        ++r;
    }

    out.consistent = true;
    for (std::size_t i = r; i < rows; ++i)
        if (!a[i][cols].is_zero()) out.consistent = false;

    for (std::size_t i = r; i-- > 0;) {
        std::size_t p = pivot_cols[i];
        RatFunc acc(a[i][cols]);
        for (std::size_t j = p + 1; j < cols; ++j)
            if (!a[i][j].is_zero()) acc -= RatFunc(a[i][j]) * out.x[j];
        out.x[p] = acc / RatFunc(a[i][p]);
    }
    return out;
}

}  // namespace germlab
