#pragma once

#include "umahler/surd.hpp"

namespace umahler {

// An exact Mahler measure: a real surd (rational or in a real quadratic
// field) that is >= 1 by construction.
struct MahlerValue {
    QuadSurd value;

    explicit MahlerValue(QuadSurd v);
    std::string str() const { return to_string(value); }
    std::string decimal(int digits) const { return decimal_expand(value, digits); }
};

// sign of (x - y); same-field comparison, exact.
int compare(const MahlerValue& x, const MahlerValue& y);

// H = M^(1/degree), kept symbolic; compared as M1^d2 vs M2^d1.
struct HeightValue {
    MahlerValue measure;
    int degree;
};

int compare(const HeightValue& x, const HeightValue& y);

// M-bar = min over roots of unity zeta of M(zeta * x), together with the
// witnessing zeta and the reduced value zeta * x.
struct MBarResult {
    MahlerValue measure;
    QuadSurd zeta;
    int zeta_order;
    QuadSurd reduced;  // zeta * input, with M(reduced) == measure
};

// Mahler measure of a linear or irreducible quadratic integer polynomial.
MahlerValue mahler_poly(const QuadPoly& f);

// Mahler measure of a nonzero surd: M of its minimal polynomial.
MahlerValue mahler_surd(const QuadSurd& x);

HeightValue weil_height(const QuadSurd& x);

MBarResult mbar(const QuadSurd& x);

}  // namespace umahler
