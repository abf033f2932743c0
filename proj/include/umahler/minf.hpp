#pragma once

#include "umahler/bset.hpp"
#include "umahler/multgroup.hpp"

namespace umahler {

struct MinfTimings {
    double bset_ms = 0;
    double scan_ms = 0;
};

struct MinfResult {
    MahlerValue value;
    std::optional<size_t> j_index;  // 1-based position of b_J; absent for roots of unity
    std::optional<BSetEntry> b_j;
    std::optional<MembershipWitness> witness;
    std::optional<OrderedBSet> bset;
    MinfTimings timings;
};

struct MinfOptions {
    EnumOptions enumeration;
    MultGroupOptions mult;
    bool keep_bset = true;
};

// Scan an explicitly ordered entry list for the least J whose prefix captures
// a power of alpha mod torsion; returns (J, witness). The list must contain
// alpha's class, which build_ordered_bset guarantees.
std::pair<size_t, MembershipWitness> minf_scan(const QuadSurd& alpha,
                                               const std::vector<BSetEntry>& entries,
                                               const MultGroupOptions& opt = {});

// M_inf(alpha) = M-bar(b_J) by the ordered B-set scan; roots of unity give 1.
MinfResult minf(const QuadSurd& alpha, const MinfOptions& opt = {});

// Rational fast path: the largest prime dividing numerator or denominator
// (1 for +-1). with_witness additionally builds the B-set and the prime-power
// factorization witness.
MinfResult minf_rational(const Rat& r, bool with_witness = false, const MinfOptions& opt = {});

nlohmann::json minf_to_json(const MinfResult& res, const std::string& input, int digits = 27);

}  // namespace umahler
