#pragma once

#include <json.hpp>

#include "umahler/lattice.hpp"
#include "umahler/places.hpp"

namespace umahler {

struct ValuationVector {
    std::vector<PrimePlace> places;
    IntVec exps;
};

ValuationVector valuation_vector(const QuadSurd& x, const std::vector<PrimePlace>& places);

struct MultGroupOptions {
    long bit_guard = 1000000;  // cap on surd coordinate bit length during powering
};

// Integer lattice of exponent vectors e with prod generators^e a root of
// unity; basis rows in Hermite normal form, each verified exactly.
struct RelationLattice {
    std::vector<QuadSurd> generators;
    Int field_k;  // 0 when all generators are rational
    IntMat basis;
};

RelationLattice relation_lattice(const std::vector<QuadSurd>& gens,
                                 const MultGroupOptions& opt = {});

// Certificate for alpha^s * zeta = prod gens^exps, verified on construction.
struct MembershipWitness {
    Int s;  // >= 1, minimal (gcd of achievable first coordinates)
    QuadSurd zeta;
    int zeta_order;
    IntVec exps;

    nlohmann::json to_json(const std::vector<QuadSurd>& gens) const;
};

// Does some positive power of alpha lie in <gens> modulo torsion?
std::optional<MembershipWitness> member_mod_torsion(const QuadSurd& alpha,
                                                    const std::vector<QuadSurd>& gens,
                                                    const MultGroupOptions& opt = {});

// Incremental membership over a growing generator prefix: the valuation
// matrix is fixed up front from the full candidate list and extended one
// column per admitted generator; kernel vectors and the unit-exponent
// functional are maintained across steps instead of recomputed.
class MembershipScanner {
  public:
    MembershipScanner(const QuadSurd& alpha, const std::vector<QuadSurd>& candidates,
                      const MultGroupOptions& opt = {});

    // Admit the next candidate; returns membership for the current prefix.
    bool extend();
    bool member() const { return member_; }
    size_t admitted() const { return admitted_; }

  private:
    struct EchelonVec {
        std::vector<Rat> col;    // reduced valuation column
        std::vector<Rat> combo;  // expression over admitted columns
        size_t pivot;
    };

    void add_column(size_t idx, const IntVec& col);
    void handle_kernel_vector(const IntVec& relation);

    MultGroupOptions opt_;
    Int field_k_;
    std::vector<QuadSurd> numbers_;  // alpha then candidates
    std::vector<PrimePlace> places_;
    std::vector<IntVec> columns_;    // valuation column per number
    std::vector<EchelonVec> ech_;
    std::optional<std::pair<IntVec, Int>> carrier_;  // kernel vector with unit exponent != 0
    std::optional<QuadSurd> eps_;                    // fundamental unit for k > 0
    size_t admitted_ = 0;
    bool member_ = false;
};

}  // namespace umahler
