#include "umahler/lattice.hpp"

#include <algorithm>

namespace umahler {

namespace {

void sub_scaled(IntVec& target, const IntVec& src, const Int& q) {
    for (size_t j = 0; j < target.size(); ++j) target[j] -= q * src[j];
}

void negate_row(IntVec& row) {
    for (Int& v : row) v = -v;
}

}  // namespace

HnfResult hnf_rows(IntMat a) {
    size_t m = a.size();
    size_t n = m == 0 ? 0 : a[0].size();
    IntMat u(m, IntVec(m, 0));
    for (size_t i = 0; i < m; ++i) u[i][i] = 1;

    size_t r = 0;
    for (size_t col = 0; col < n && r < m; ++col) {
        // gcd-reduce the column below row r until one nonzero entry remains
        for (;;) {
            size_t best = m;
            for (size_t i = r; i < m; ++i) {
                if (a[i][col] == 0) continue;
                if (best == m || abs(a[i][col]) < abs(a[best][col])) best = i;
            }
            if (best == m) break;  // column is zero below r
            std::swap(a[best], a[r]);
            std::swap(u[best], u[r]);
            bool cleared = true;
            for (size_t i = r + 1; i < m; ++i) {
                if (a[i][col] == 0) continue;
                Int q = floor_div(a[i][col], a[r][col]);
                sub_scaled(a[i], a[r], q);
                sub_scaled(u[i], u[r], q);
                if (a[i][col] != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (a[r][col] == 0) continue;
        if (a[r][col] < 0) {
            negate_row(a[r]);
            negate_row(u[r]);
        }
        for (size_t i = 0; i < r; ++i) {
            Int q = floor_div(a[i][col], a[r][col]);
            if (q != 0) {
                sub_scaled(a[i], a[r], q);
                sub_scaled(u[i], u[r], q);
            }
        }
        ++r;
    }
    return HnfResult{std::move(a), std::move(u)};
}

IntMat kernel_basis(const IntMat& a, size_t ncols) {
    // left-kernel of A^T: rows of U paired with zero rows of H
    size_t m = a.size();
    IntMat at(ncols, IntVec(m, 0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < ncols; ++j) at[j][i] = a[i][j];
    HnfResult res = hnf_rows(std::move(at));
    IntMat kernel;
    for (size_t i = 0; i < ncols; ++i) {
        bool zero = std::all_of(res.h[i].begin(), res.h[i].end(),
                                [](const Int& v) { return v == 0; });
        if (zero) kernel.push_back(std::move(res.u[i]));
    }
    return kernel;
}

IntMat hnf_basis(IntMat rows) {
    if (rows.empty()) return rows;
    HnfResult res = hnf_rows(std::move(rows));
    IntMat out;
    for (IntVec& row : res.h) {
        bool zero = std::all_of(row.begin(), row.end(), [](const Int& v) { return v == 0; });
        if (!zero) out.push_back(std::move(row));
    }
    return out;
}

}  // namespace umahler
