#include "umahler/minf.hpp"

#include <chrono>

namespace umahler {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

std::pair<size_t, MembershipWitness> minf_scan(const QuadSurd& alpha,
                                               const std::vector<BSetEntry>& entries,
                                               const MultGroupOptions& opt) {
    std::vector<QuadSurd> values;
    values.reserve(entries.size());
    for (const BSetEntry& e : entries) values.push_back(e.value);
    MembershipScanner scanner(alpha, values, opt);
    for (size_t j = 1; j <= values.size(); ++j) {
        if (!scanner.extend()) continue;
        std::vector<QuadSurd> prefix(values.begin(), values.begin() + j);
        auto witness = member_mod_torsion(alpha, prefix, opt);
        if (!witness) throw domain_error("scan/witness disagreement");
        return {j, std::move(*witness)};
    }
    throw domain_error("B-set scan failed to capture alpha");
}

MinfResult minf(const QuadSurd& alpha, const MinfOptions& opt) {
    if (alpha.is_zero()) throw domain_error("M_inf of 0");
    if (is_root_of_unity(alpha))
        return MinfResult{MahlerValue(QuadSurd(1)), std::nullopt, std::nullopt,
                          std::nullopt, std::nullopt, {}};

    MinfTimings timings;
    auto t0 = std::chrono::steady_clock::now();
    OrderedBSet bset = build_ordered_bset(alpha, opt.enumeration);
    timings.bset_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    auto [j, witness] = minf_scan(alpha, bset.entries, opt.mult);
    timings.scan_ms = ms_since(t0);

    BSetEntry b_j = bset.entries[j - 1];
    MahlerValue value = b_j.mbar.measure;
    return MinfResult{std::move(value), j, std::move(b_j), std::move(witness),
                      opt.keep_bset ? std::optional<OrderedBSet>(std::move(bset)) : std::nullopt,
                      timings};
}

MinfResult minf_rational(const Rat& r, bool with_witness, const MinfOptions& opt) {
    if (r == 0) throw domain_error("M_inf of 0");
    auto p = largest_prime_of(r);
    if (!p)  // r = +-1, a root of unity
        return MinfResult{MahlerValue(QuadSurd(1)), std::nullopt, std::nullopt,
                          std::nullopt, std::nullopt, {}};
    MinfResult res{MahlerValue(QuadSurd(*p)), std::nullopt, std::nullopt,
                   std::nullopt, std::nullopt, {}};
    if (!with_witness) return res;

    auto t0 = std::chrono::steady_clock::now();
    OrderedBSet bset = build_ordered_bset(QuadSurd(r), opt.enumeration);
    res.timings.bset_ms = ms_since(t0);
    size_t j = 0;
    for (size_t i = 0; i < bset.entries.size(); ++i) {
        if (bset.entries[i].value == QuadSurd(*p)) {
            j = i + 1;
            break;
        }
    }
    if (j == 0) throw domain_error("largest prime missing from B-set");

    // r = sign * prod q^v_q(r) over primes q <= p, each a B-set entry
    IntVec exps(j, 0);
    for (size_t i = 0; i < j; ++i) {
        const QuadSurd& v = bset.entries[i].value;
        const Rat& q = v.as_rational();
        if (q.get_den() != 1 || !is_prime(rat_num(q))) continue;
        exps[i] = valuation_rat(r, rat_num(q));
    }
    QuadSurd zeta(sgn(r) < 0 ? -1 : 1);
    QuadSurd lhs = QuadSurd(r) * zeta;
    QuadSurd rhs(1);
    for (size_t i = 0; i < j; ++i)
        if (exps[i] != 0) rhs = rhs * bset.entries[i].value.pow(exps[i]);
    if (!(lhs == rhs)) throw domain_error("rational witness verification failed");

    res.j_index = j;
    res.b_j = bset.entries[j - 1];
    res.witness = MembershipWitness{1, zeta, *is_root_of_unity(zeta), std::move(exps)};
    res.bset = std::move(bset);
    return res;
}

nlohmann::json minf_to_json(const MinfResult& res, const std::string& input, int digits) {
    nlohmann::json out{{"input", input},
                       {"value", {{"exact", res.value.str()}, {"decimal", res.value.decimal(digits)}}},
                       {"bset_size", res.bset ? nlohmann::json(res.bset->entries.size())
                                              : nlohmann::json(nullptr)},
                       {"timings", {{"bset_ms", res.timings.bset_ms},
                                    {"scan_ms", res.timings.scan_ms}}}};
    out["j_index"] = res.j_index ? nlohmann::json(*res.j_index) : nlohmann::json(nullptr);
    if (res.b_j) {
        nlohmann::json coeffs = nlohmann::json::array();
        for (const Int* c : {&res.b_j->minpoly.a2, &res.b_j->minpoly.a1, &res.b_j->minpoly.a0})
            coeffs.push_back(c->fits_slong_p() ? nlohmann::json(c->get_si())
                                               : nlohmann::json(c->get_str()));
        out["b_j"] = {{"value", to_string(res.b_j->value)},
                      {"minpoly", coeffs},
                      {"mbar", {{"exact", res.b_j->mbar.measure.str()},
                                {"decimal", res.b_j->mbar.measure.decimal(digits)}}}};
    } else {
        out["b_j"] = nullptr;
    }
    if (res.witness && res.bset) {
        std::vector<QuadSurd> gens;
        for (size_t i = 0; i < res.witness->exps.size(); ++i)
            gens.push_back(res.bset->entries[i].value);
        out["witness"] = res.witness->to_json(gens);
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

}  // namespace umahler
