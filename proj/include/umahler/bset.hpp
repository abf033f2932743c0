#pragma once

#include <json.hpp>

#include "umahler/mahler.hpp"

namespace umahler {

// One element of the candidate set B: a canonical representative together
// with its minimal polynomial and modified Mahler measure.
struct BSetEntry {
    QuadSurd value;
    QuadPoly minpoly;
    MBarResult mbar;
    int degree;
};

struct EnumOptions {
    long guard = 10000;  // refuse enumerations with floor(M) above this
    int workers = 1;
    std::optional<QuadSurd> bound_override;  // exact bound replacing M(alpha)
};

// All positive rationals m/n in lowest terms with max(m, n) <= floor(bound).
std::vector<Rat> enumerate_b1(const MahlerValue& bound);

// All integer quadratics a x^2 + b x + c, 1 <= a <= floor(M), 0 <= b <=
// floor(2M), |c| <= floor(M), that are irreducible, have roots in Q(sqrt(k))
// and Mahler measure exactly <= M; one entry per polynomial, carrying the
// (-b + sqrt(D))/(2a) root. Loop order (a, b, c) ascending.
std::vector<BSetEntry> enumerate_b2(const QuadPoly& alpha_minpoly, const Int& k,
                                    const EnumOptions& opt = {});

// Text replication of the enumeration: one line "(a, b, c) -- <decimal M>"
// per kept triple, in loop order.
std::string b2list_compat(const Int& A, const Int& B, const Int& C, const Int& k,
                          int digits = 27, const EnumOptions& opt = {});

struct OrderedBSet {
    QuadSurd alpha;
    std::optional<Int> field_k;  // nullopt when alpha is rational
    MahlerValue alpha_measure;
    std::vector<BSetEntry> entries;  // nondecreasing modified Mahler measure

    // The entry values together with their negatives (the +- closure of B).
    std::vector<QuadSurd> plus_minus_closure() const;
    nlohmann::json to_json(int digits = 27) const;
};

// Total order on entries: M-bar ascending, then degree, then lexicographic
// minimal polynomial, then the +sqrt(D) root before its conjugate.
bool entry_order_less(const BSetEntry& x, const BSetEntry& y);

// B = B1 (positive rationals) plus, for quadratic alpha, both roots of every
// polynomial found by enumerate_b2, sorted by entry_order_less.
OrderedBSet build_ordered_bset(const QuadSurd& alpha, const EnumOptions& opt = {});

}  // namespace umahler
