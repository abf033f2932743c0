#include "umahler/multgroup.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace umahler {

namespace {

Int common_field(const std::vector<QuadSurd>& nums) {
    Int k = 0;
    for (const QuadSurd& x : nums) {
        if (x.is_rational()) continue;
        if (k == 0)
            k = x.field_k();
        else if (k != x.field_k())
            throw domain_error("mixed quadratic fields");
    }
    return k;
}

std::vector<Int> support_primes(const std::vector<QuadSurd>& nums) {
    std::set<Int> primes;
    auto add_factors = [&](const Int& n) {
        if (abs(n) <= 1) return;
        for (const auto& [p, e] : factorize(n).factors) primes.insert(p);
    };
    for (const QuadSurd& x : nums) {
        Rat n = x.norm();
        add_factors(rat_num(n));
        add_factors(rat_den(n));
        Int w;
        mpz_lcm(w.get_mpz_t(), rat_den(x.rational_part()).get_mpz_t(),
                rat_den(x.surd_part()).get_mpz_t());
        add_factors(w);
    }
    return {primes.begin(), primes.end()};
}

void check_bits(const QuadSurd& x, long guard) {
    auto bits = [](const Int& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); };
    size_t total = bits(rat_num(x.rational_part())) + bits(rat_den(x.rational_part())) +
                   bits(rat_num(x.surd_part())) + bits(rat_den(x.surd_part()));
    if (total > static_cast<size_t>(guard))
        throw resource_error("surd coordinates exceeded the bit-length guard");
}

QuadSurd checked_pow(const QuadSurd& x, const Int& e, long guard) {
    if (e < 0) return checked_pow(x.inverse(), Int(-e), guard);
    QuadSurd acc(1), base = x;
    size_t nbits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = 0; i < nbits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) {
            acc = acc * base;
            check_bits(acc, guard);
        }
        if (i + 1 < nbits) {
            base = base * base;
            check_bits(base, guard);
        }
    }
    return acc;
}

QuadSurd product_pow(const std::vector<QuadSurd>& nums, const IntVec& exps, long guard) {
    QuadSurd acc(1);
    for (size_t j = 0; j < exps.size() && j < nums.size(); ++j)
        if (exps[j] != 0) acc = acc * checked_pow(nums[j], exps[j], guard);
    return acc;
}

double log2_rat(const Rat& q) {
    long en, ed;
    Int num = rat_num(q), den = rat_den(q);
    double dn = mpz_get_d_2exp(&en, num.get_mpz_t());
    double dd = mpz_get_d_2exp(&ed, den.get_mpz_t());
    return std::log2(dn) - std::log2(dd) + static_cast<double>(en - ed);
}

// log2 of a positive real surd, from an enclosure with relative width < 2^-40.
double log2_of_positive(const QuadSurd& x) {
    if (x.is_rational()) return log2_rat(x.as_rational());
    Int scale = 1;
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), 40);
    for (unsigned bits = 96;; bits *= 2) {
        auto [lo, hi] = rational_enclosure(x, bits);
        if (lo <= 0) continue;
        if ((hi - lo) * Rat(scale) < lo) return log2_rat(lo);
    }
}

// m with u = +-eps^m; u must be a unit of the real quadratic field of eps.
Int unit_exponent(const QuadSurd& u, const QuadSurd& eps, long guard) {
    if (u.is_rational()) {
        if (abs(u.as_rational()) != 1) throw domain_error("unit expected in exponent extraction");
        return 0;
    }
    QuadSurd au = sign_of(u) < 0 ? -u : u;
    double m_est = log2_of_positive(au) / log2_of_positive(eps);
    long m0 = std::llround(m_est);
    for (long d : {0L, 1L, -1L, 2L, -2L}) {
        Int m(m0 + d);
        QuadSurd t = u * checked_pow(eps, Int(-m), guard);
        if (t == QuadSurd(1) || t == QuadSurd(-1)) return m;
    }
    throw domain_error("unit exponent extraction failed");
}

IntVec scale_to_primitive(const std::vector<Rat>& v) {
    Int lcm = 1;
    for (const Rat& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), rat_den(q).get_mpz_t());
    IntVec out;
    Int g = 0;
    out.reserve(v.size());
    for (const Rat& q : v) {
        out.push_back(rat_num(q * Rat(lcm)));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
    }
    if (g > 1)
        for (Int& z : out) z /= g;
    return out;
}

IntMat valuation_matrix(const std::vector<QuadSurd>& nums, const Int& k,
                        const std::vector<Int>& primes,
                        std::vector<PrimePlace>* places_out) {
    IntMat rows;
    if (k != 0) {
        std::vector<PrimePlace> places = places_for(k, primes);
        for (const PrimePlace& pl : places) {
            IntVec row;
            row.reserve(nums.size());
            for (const QuadSurd& x : nums) row.push_back(valuation(x, pl));
            rows.push_back(std::move(row));
        }
        if (places_out) *places_out = std::move(places);
    } else {
        for (const Int& p : primes) {
            IntVec row;
            row.reserve(nums.size());
            for (const QuadSurd& x : nums) row.push_back(valuation_rat(x.as_rational(), p));
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace

ValuationVector valuation_vector(const QuadSurd& x, const std::vector<PrimePlace>& places) {
    ValuationVector out;
    out.places = places;
    for (const PrimePlace& pl : places) out.exps.push_back(valuation(x, pl));
    return out;
}

RelationLattice relation_lattice(const std::vector<QuadSurd>& gens, const MultGroupOptions& opt) {
    for (const QuadSurd& g : gens)
        if (g.is_zero()) throw domain_error("zero generator");
    Int k = common_field(gens);
    if (gens.empty()) return RelationLattice{gens, k, {}};

    IntMat matrix = valuation_matrix(gens, k, support_primes(gens), nullptr);
    IntMat stage1 = kernel_basis(matrix, gens.size());

    IntMat relations;
    if (k > 0 && !stage1.empty()) {
        QuadSurd eps = fundamental_unit(k);
        IntVec ms;
        ms.reserve(stage1.size());
        for (const IntVec& e : stage1)
            ms.push_back(unit_exponent(product_pow(gens, e, opt.bit_guard), eps, opt.bit_guard));
        IntMat combos = kernel_basis(IntMat{ms}, stage1.size());
        for (const IntVec& cvec : combos) {
            IntVec r(gens.size(), 0);
            for (size_t i = 0; i < stage1.size(); ++i)
                if (cvec[i] != 0)
                    for (size_t j = 0; j < gens.size(); ++j) r[j] += cvec[i] * stage1[i][j];
            relations.push_back(std::move(r));
        }
    } else {
        relations = std::move(stage1);
    }
    relations = hnf_basis(std::move(relations));

    for (const IntVec& e : relations)
        if (!is_root_of_unity(product_pow(gens, e, opt.bit_guard)))
            throw domain_error("relation lattice verification failed");
    return RelationLattice{gens, k, std::move(relations)};
}

nlohmann::json MembershipWitness::to_json(const std::vector<QuadSurd>& gens) const {
    nlohmann::json factors = nlohmann::json::array();
    for (size_t i = 0; i < exps.size() && i < gens.size(); ++i) {
        if (exps[i] == 0) continue;
        factors.push_back({{"base", to_string(gens[i])},
                           {"exp", exps[i].fits_slong_p() ? nlohmann::json(exps[i].get_si())
                                                          : nlohmann::json(exps[i].get_str())}});
    }
    return {{"s", s.fits_slong_p() ? nlohmann::json(s.get_si()) : nlohmann::json(s.get_str())},
            {"zeta", {{"order", zeta_order}, {"value", to_string(zeta)}}},
            {"factors", factors}};
}

std::optional<MembershipWitness> member_mod_torsion(const QuadSurd& alpha,
                                                    const std::vector<QuadSurd>& gens,
                                                    const MultGroupOptions& opt) {
    if (alpha.is_zero()) throw domain_error("membership of 0");
    std::vector<QuadSurd> all{alpha};
    all.insert(all.end(), gens.begin(), gens.end());
    RelationLattice rl = relation_lattice(all, opt);
    if (rl.basis.empty() || rl.basis[0][0] == 0) return std::nullopt;

    const IntVec& v = rl.basis[0];  // HNF pivot row: v[0] = gcd of first coordinates
    Int s = v[0];
    QuadSurd zeta0 = product_pow(all, v, opt.bit_guard);
    auto order0 = is_root_of_unity(zeta0);
    if (!order0) throw domain_error("membership witness failed torsion check");
    QuadSurd zeta = zeta0.inverse();

    IntVec exps(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) exps[i] = -v[i + 1];
    QuadSurd lhs = checked_pow(alpha, s, opt.bit_guard) * zeta;
    QuadSurd rhs = product_pow(gens, exps, opt.bit_guard);
    if (!(lhs == rhs)) throw domain_error("membership witness failed verification");
    return MembershipWitness{s, zeta, *is_root_of_unity(zeta), std::move(exps)};
}

MembershipScanner::MembershipScanner(const QuadSurd& alpha,
                                     const std::vector<QuadSurd>& candidates,
                                     const MultGroupOptions& opt)
    : opt_(opt) {
    if (alpha.is_zero()) throw domain_error("membership of 0");
    numbers_.push_back(alpha);
    for (const QuadSurd& c : candidates) {
        if (c.is_zero()) throw domain_error("zero generator");
        numbers_.push_back(c);
    }
    field_k_ = common_field(numbers_);
    IntMat matrix = valuation_matrix(numbers_, field_k_, support_primes(numbers_), &places_);
    size_t rows = matrix.size();
    columns_.assign(numbers_.size(), IntVec(rows, 0));
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < numbers_.size(); ++c) columns_[c][r] = matrix[r][c];
    if (field_k_ > 0) eps_ = fundamental_unit(field_k_);
    add_column(0, columns_[0]);  // alpha is column 0
}

void MembershipScanner::add_column(size_t idx, const IntVec& col) {
    std::vector<Rat> r(col.size());
    for (size_t i = 0; i < col.size(); ++i) r[i] = Rat(col[i]);
    std::vector<Rat> combo(numbers_.size(), Rat(0));
    combo[idx] = 1;

    for (const EchelonVec& ev : ech_) {
        if (r[ev.pivot] == 0) continue;
        Rat f = r[ev.pivot] / ev.col[ev.pivot];
        for (size_t i = 0; i < r.size(); ++i) r[i] -= f * ev.col[i];
        for (size_t j = 0; j < combo.size(); ++j) combo[j] -= f * ev.combo[j];
    }
    size_t pivot = r.size();
    for (size_t i = 0; i < r.size(); ++i)
        if (r[i] != 0) {
            pivot = i;
            break;
        }
    if (pivot == r.size()) {
        handle_kernel_vector(scale_to_primitive(combo));
        return;
    }
    // keep the echelon fully reduced so later reductions are order-independent
    for (EchelonVec& ev : ech_) {
        if (ev.col[pivot] == 0) continue;
        Rat f = ev.col[pivot] / r[pivot];
        for (size_t i = 0; i < ev.col.size(); ++i) ev.col[i] -= f * r[i];
        for (size_t j = 0; j < ev.combo.size(); ++j) ev.combo[j] -= f * combo[j];
    }
    ech_.push_back(EchelonVec{std::move(r), std::move(combo), pivot});
}

void MembershipScanner::handle_kernel_vector(const IntVec& relation) {
    if (field_k_ > 0) {
        QuadSurd u = product_pow(numbers_, relation, opt_.bit_guard);
        Int m = unit_exponent(u, *eps_, opt_.bit_guard);
        if (m != 0) {
            if (!carrier_) {
                carrier_ = {relation, m};
                return;
            }
            auto& [c, mc] = *carrier_;
            Int g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), mc.get_mpz_t(),
                       m.get_mpz_t());
            IntVec w(relation.size()), nc(relation.size());
            for (size_t j = 0; j < relation.size(); ++j) {
                w[j] = (m / g) * c[j] - (mc / g) * relation[j];
                nc[j] = x * c[j] + y * relation[j];
            }
            carrier_ = {std::move(nc), g};
            if (w[0] != 0) member_ = true;
            return;
        }
    }
    if (relation[0] != 0) member_ = true;
}

bool MembershipScanner::extend() {
    size_t idx = 1 + admitted_;
    if (idx >= columns_.size()) throw domain_error("scanner has no further candidates");
    add_column(idx, columns_[idx]);
    ++admitted_;
    return member_;
}

}  // namespace umahler
