#include "umahler/mahler.hpp"

namespace umahler {

MahlerValue::MahlerValue(QuadSurd v) : value(std::move(v)) {
    if (!value.is_real() || sign_of(value - QuadSurd(1)) < 0)
        throw domain_error("Mahler measures are real and >= 1");
}

int compare(const MahlerValue& x, const MahlerValue& y) { return compare(x.value, y.value); }

int compare(const HeightValue& x, const HeightValue& y) {
    return compare(x.measure.value.pow(y.degree), y.measure.value.pow(x.degree));
}

MahlerValue mahler_poly(const QuadPoly& f) {
    if (f.degree() == 1) {
        Int m = std::max(f.a1, Int(abs(f.a0)));
        return MahlerValue(QuadSurd(m));
    }
    Int disc = f.discriminant();
    if (disc < 0) {
        // conjugate complex roots share modulus sqrt(a0/a2)
        return MahlerValue(QuadSurd(std::max(f.a2, Int(abs(f.a0)))));
    }
    Int k = squarefree_decompose(disc).first;
    QuadSurd r_plus = poly_root(f, k, true);
    QuadSurd r_minus = poly_root(f, k, false);
    const QuadSurd one(1);
    bool plus_out = sign_of(r_plus * r_plus - one) > 0;
    bool minus_out = sign_of(r_minus * r_minus - one) > 0;
    if (plus_out && minus_out) return MahlerValue(QuadSurd(Int(abs(f.a0))));
    if (!plus_out && !minus_out) return MahlerValue(QuadSurd(f.a2));
    QuadSurd m = QuadSurd(f.a2) * (plus_out ? r_plus : r_minus);
    if (sign_of(m) < 0) m = -m;
    return MahlerValue(m);
}

MahlerValue mahler_surd(const QuadSurd& x) {
    if (x.is_zero()) throw domain_error("Mahler measure of 0");
    return mahler_poly(minimal_polynomial(x));
}

HeightValue weil_height(const QuadSurd& x) {
    if (x.is_zero()) throw domain_error("Weil height of 0");
    return HeightValue{mahler_surd(x), x.degree()};
}

MBarResult mbar(const QuadSurd& x) {
    if (x.is_zero()) throw domain_error("modified Mahler measure of 0");
    const Rat& a = x.rational_part();
    const Rat& b = x.surd_part();
    QuadSurd zeta(1);
    if (x.field_k() == -1 && a == 0) {
        zeta = QuadSurd(make_rat(0), make_rat(-1), Int(-1));  // -i, so zeta*x = b
    } else if (x.field_k() == -3 && (a == b || a == -b)) {
        // x = 2a * (1 +- sqrt(-3))/2, a sixth root of unity times 2a
        Rat half = make_rat(1, 2);
        zeta = (a == b) ? QuadSurd(half, -half, Int(-3)) : QuadSurd(half, half, Int(-3));
    }
    QuadSurd reduced = zeta * x;
    return MBarResult{mahler_surd(reduced), zeta, *is_root_of_unity(zeta), reduced};
}

}  // namespace umahler
