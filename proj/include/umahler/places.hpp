#pragma once

#include "umahler/surd.hpp"

namespace umahler {

enum class SplitKind { split, inert, ramified };

// A place of Q(sqrt(k)) above a rational prime p. Split places come in
// conjugate pairs, distinguished by branch and carrying sqrt(k) mod
// p^precision (branch 1 holds the negated root).
struct PrimePlace {
    Int p;
    SplitKind kind;
    Int k;
    int branch = 0;
    Int hensel_root = 0;
    int precision = 0;
};

// From the Kronecker symbol of the field discriminant at p.
SplitKind splitting_kind(const Int& k, const Int& p);

// sqrt(a) mod p^e, canonical branch (least root mod p; root = 1 mod 4 when
// p = 2). Requires a to be a square in Z_p.
Int sqrt_mod_prime_power(const Int& a, const Int& p, int e);

// The places of Q(sqrt(k)) above each listed prime.
std::vector<PrimePlace> places_for(const Int& k, const std::vector<Int>& support_primes,
                                   int precision = 16);

// Exact valuation v_P(x) for x != 0.
Int valuation(const QuadSurd& x, const PrimePlace& place);

}  // namespace umahler
