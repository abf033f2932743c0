#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "umahler/errors.hpp"

namespace umahler {

// Arbitrary-precision integers and rationals. Rationals are kept canonical
// (lowest terms, positive denominator, zero is 0/1); always construct them
// through make_rat so equality stays structural.
using Int = mpz_class;
using Rat = mpq_class;

Rat make_rat(const Int& num, const Int& den);
Rat make_rat(long num, long den = 1);

// Accepts "m" or "m/n".
Rat rat_from_string(const std::string& text);
std::string rat_to_string(const Rat& q);

inline Int rat_num(const Rat& q) { return Int(q.get_num()); }
inline Int rat_den(const Rat& q) { return Int(q.get_den()); }

// floor(a/b), exact.
Int floor_div(const Int& a, const Int& b);
Int floor_rat(const Rat& q);

// floor(sqrt(n)) for n >= 0.
Int isqrt_floor(const Int& n);

// r with r*r == n when n is a perfect square (0 counts), nullopt otherwise.
std::optional<Int> is_perfect_square(const Int& n);

// n = s * f^2 with s squarefree of the same sign as n and f >= 1. n != 0.
std::pair<Int, Int> squarefree_decompose(const Int& n);

bool is_squarefree(const Int& n);

// Deterministic for |n| < 3.3e24 (fixed Miller-Rabin witness set); above that
// falls back to a fixed-base probable-prime test, far past anything this
// library enumerates.
bool is_prime(const Int& n);

struct Factorization {
    int sign = 1;                                  // +1 or -1
    std::vector<std::pair<Int, Int>> factors;      // (prime, exponent>=1), primes increasing

    Int reconstruct() const;
};

// Exact prime factorization of n != 0. Trial division up to 1e6, then
// deterministically seeded Pollard-Brent rho.
Factorization factorize(const Int& n);

// Exact p-adic valuation; n != 0.
Int valuation_int(const Int& n, const Int& p);
Int valuation_rat(const Rat& q, const Int& p);

// Largest prime dividing numerator or denominator of r != 0;
// nullopt marks the unit case r = +-1.
std::optional<Int> largest_prime_of(const Rat& r);

}  // namespace umahler
