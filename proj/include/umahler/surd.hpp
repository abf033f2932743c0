#pragma once

#include <optional>
#include <string>
#include <vector>

#include "umahler/exact.hpp"

namespace umahler {

// Squarefree field discriminant part k, k not in {0, 1}.
struct SquarefreeK {
    Int k;
    explicit SquarefreeK(Int k_in);
};

// Exact element a + b*sqrt(k) of Q(sqrt(k)). Rationals are the degenerate
// b = 0 form and carry k = 0; k is squarefree and != 0, 1 otherwise, so a
// value has exactly one representation.
class QuadSurd {
  public:
    QuadSurd() : a_(0), b_(0), k_(0) {}
    QuadSurd(const Rat& r) : a_(r), b_(0), k_(0) {}
    QuadSurd(const Int& n) : a_(make_rat(n, 1)), b_(0), k_(0) {}
    QuadSurd(long n) : a_(make_rat(n)), b_(0), k_(0) {}
    QuadSurd(const Rat& a, const Rat& b, const Int& k);

    const Rat& rational_part() const { return a_; }
    const Rat& surd_part() const { return b_; }
    const Int& field_k() const { return k_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_real() const { return b_ == 0 || k_ > 0; }
    // The rational value; requires is_rational().
    const Rat& as_rational() const;
    int degree() const { return is_rational() ? 1 : 2; }

    QuadSurd conjugate() const;
    Rat norm() const { return a_ * a_ - b_ * b_ * Rat(k_); }
    Rat trace() const { return 2 * a_; }
    QuadSurd inverse() const;
    QuadSurd pow(const Int& e) const;

    friend QuadSurd operator-(const QuadSurd& x) { return QuadSurd(-x.a_, -x.b_, x.k_); }
    friend QuadSurd operator+(const QuadSurd& x, const QuadSurd& y);
    friend QuadSurd operator-(const QuadSurd& x, const QuadSurd& y);
    friend QuadSurd operator*(const QuadSurd& x, const QuadSurd& y);
    friend QuadSurd operator/(const QuadSurd& x, const QuadSurd& y);
    friend bool operator==(const QuadSurd& x, const QuadSurd& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.k_ == y.k_;
    }
    friend bool operator!=(const QuadSurd& x, const QuadSurd& y) { return !(x == y); }

  private:
    Rat a_, b_;
    Int k_;

    // fields must agree, or one side rational; returns the joint k
    static Int joint_field(const QuadSurd& x, const QuadSurd& y);
};

// Exact sign of a real surd: -1, 0 or +1. Rejects imaginary fields.
int sign_of(const QuadSurd& x);

// compare(x, y) = sign_of(x - y); both real, same field (or rational).
int compare(const QuadSurd& x, const QuadSurd& y);

// floor of a real surd, exact.
Int floor_surd(const QuadSurd& x);

// Multiplicative order when x is one of {+-1, +-i, (+-1 +- sqrt(-3))/2},
// the only roots of unity in any rational or quadratic field.
std::optional<int> is_root_of_unity(const QuadSurd& x);

// All roots of unity living in Q(sqrt(k)) (k = 0 means Q): {+-1} plus
// {+-i} for k = -1 and the primitive third/sixth roots for k = -3.
std::vector<QuadSurd> torsion_elements(const Int& k);

// Correctly rounded decimal expansion of a real surd with `digits` places
// after the point, computed by rational interval refinement of sqrt(k).
std::string decimal_expand(const QuadSurd& x, int digits);

// Rational enclosure lo < x < hi (lo = hi = x when rational) of width
// at most 1/2^precision_bits.
std::pair<Rat, Rat> rational_enclosure(const QuadSurd& x, unsigned precision_bits);

// Canonical text form "(p +- q*sqrt(k))/r" (r > 0, gcd(p,q,r) = 1, redundant
// parts dropped) or "m/n" for rationals.
std::string to_string(const QuadSurd& x);
QuadSurd parse_surd(const std::string& text);

// Integer polynomial a2*x^2 + a1*x + a0 of degree 1 or 2: content 1, leading
// coefficient positive, and irreducible over Q when quadratic (non-square
// discriminant). Canonicalized on construction.
struct QuadPoly {
    Int a2, a1, a0;

    QuadPoly(const Int& c2, const Int& c1, const Int& c0);
    int degree() const { return a2 != 0 ? 2 : 1; }
    Int discriminant() const { return a1 * a1 - 4 * a2 * a0; }
    QuadSurd eval(const QuadSurd& x) const;
    friend bool operator==(const QuadPoly& f, const QuadPoly& g) {
        return f.a2 == g.a2 && f.a1 == g.a1 && f.a0 == g.a0;
    }
    std::string to_string() const;
};

QuadPoly minimal_polynomial(const QuadSurd& x);

// The root (-a1 + sqrt(D))/(2*a2) (plus = true) or its conjugate, as an
// element of Q(sqrt(k)); requires k to be the squarefree part of D.
QuadSurd poly_root(const QuadPoly& f, const Int& k, bool plus);

// Fundamental unit eps > 1 of the ring of integers of Q(sqrt(k)), k > 0
// squarefree, via the continued fraction expansion of sqrt(k) (plus the exact
// half-integer correction for k = 1 mod 4). |Norm(eps)| = 1.
QuadSurd fundamental_unit(const Int& k);

}  // namespace umahler
