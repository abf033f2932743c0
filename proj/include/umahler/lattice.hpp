#pragma once

#include <vector>

#include "umahler/exact.hpp"

namespace umahler {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;  // row-major

// Row-style Hermite normal form: H = U * A with U unimodular, H in row
// echelon form with positive pivots and reduced entries above each pivot.
struct HnfResult {
    IntMat h;
    IntMat u;
};

HnfResult hnf_rows(IntMat a);

// Basis, as rows, of the lattice { e in Z^n : A e = 0 }.
IntMat kernel_basis(const IntMat& a, size_t ncols);

// HNF basis of the lattice spanned by the given rows (zero rows dropped).
IntMat hnf_basis(IntMat rows);

}  // namespace umahler
