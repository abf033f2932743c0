#include "umahler/bset.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <thread>

namespace umahler {

std::vector<Rat> enumerate_b1(const MahlerValue& bound) {
    Int fb = floor_surd(bound.value);
    std::vector<Rat> out;
    for (Int m = 1; m <= fb; ++m)
        for (Int n = 1; n <= fb; ++n) {
            Int g;
            mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
            if (g == 1) out.push_back(make_rat(m, n));
        }
    return out;
}

namespace {

bool is_square_ll(long d) {
    if (d < 0) return false;
    long r = static_cast<long>(std::sqrt(static_cast<double>(d)));
    while (r > 0 && r * r > d) --r;
    while ((r + 1) * (r + 1) <= d) ++r;
    return r * r == d;
}

// One a-chunk of the (a, b, c) scan; appends kept entries in loop order.
void scan_range(long a_lo, long a_hi, long floor_m, long floor_2m,
                long kk, const Int& k, const QuadSurd& bound,
                std::vector<BSetEntry>& out) {
    for (long a = a_lo; a <= a_hi; ++a)
        for (long b = 0; b <= floor_2m; ++b)
            for (long c = -floor_m; c <= floor_m; ++c) {
                long d = b * b - 4 * a * c;
                if (is_square_ll(d)) continue;
                if (std::gcd(a, std::gcd(b, c)) != 1) continue;
                if (d % kk != 0) continue;
                long q = d / kk;
                if (q < 0 || !is_square_ll(q)) continue;
                QuadPoly f{Int(a), Int(b), Int(c)};
                MahlerValue m = mahler_poly(f);
                if (compare(m.value, bound) > 0) continue;
                QuadSurd root = poly_root(f, k, true);
                out.push_back(BSetEntry{root, f, mbar(root), 2});
            }
}

}  // namespace

std::vector<BSetEntry> enumerate_b2(const QuadPoly& alpha_minpoly, const Int& k,
                                    const EnumOptions& opt) {
    if (alpha_minpoly.degree() != 2)
        throw domain_error("enumerate_b2 requires a quadratic minimal polynomial");
    Int disc = alpha_minpoly.discriminant();
    if (k == 0 || disc % k != 0 || !is_perfect_square(disc / k))
        throw domain_error("k is not the squarefree part of the discriminant");

    QuadSurd bound =
        opt.bound_override ? *opt.bound_override : mahler_poly(alpha_minpoly).value;
    if (!bound.is_real()) throw domain_error("enumeration bound must be real");
    Int floor_m_z = floor_surd(bound);
    if (floor_m_z < 1) return {};
    if (opt.guard > 30000000)
        throw resource_error("enumeration guard above the 3e7 scan limit");
    if (floor_m_z > opt.guard)
        throw resource_error("enumeration guard exceeded: floor(M) = " + floor_m_z.get_str() +
                             " > " + std::to_string(opt.guard));
    long floor_m = floor_m_z.get_si();
    long floor_2m = floor_surd(QuadSurd(2) * bound).get_si();
    long kk = k.get_si();

    int workers = std::max(1, opt.workers);
    if (workers == 1 || floor_m < 2 * workers) {
        std::vector<BSetEntry> out;
        scan_range(1, floor_m, floor_m, floor_2m, kk, k, bound, out);
        return out;
    }
    std::vector<std::vector<BSetEntry>> parts(workers);
    std::vector<std::thread> pool;
    long chunk = (floor_m + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        long lo = 1 + w * chunk, hi = std::min<long>(floor_m, (w + 1) * chunk);
        if (lo > hi) continue;
        pool.emplace_back([=, &parts, &k, &bound] {
            scan_range(lo, hi, floor_m, floor_2m, kk, k, bound, parts[w]);
        });
    }
    for (auto& t : pool) t.join();
    std::vector<BSetEntry> out;
    for (auto& p : parts)
        for (auto& e : p) out.push_back(std::move(e));
    return out;
}

std::string b2list_compat(const Int& A, const Int& B, const Int& C, const Int& k,
                          int digits, const EnumOptions& opt) {
    QuadPoly f(A, B, C);
    std::string out;
    for (const BSetEntry& e : enumerate_b2(f, k, opt)) {
        MahlerValue m = mahler_poly(e.minpoly);
        out += "(" + e.minpoly.a2.get_str() + ", " + e.minpoly.a1.get_str() + ", " +
               e.minpoly.a0.get_str() + ") -- " + m.decimal(digits) + "\n";
    }
    return out;
}

bool entry_order_less(const BSetEntry& x, const BSetEntry& y) {
    int c = compare(x.mbar.measure, y.mbar.measure);
    if (c != 0) return c < 0;
    if (x.degree != y.degree) return x.degree < y.degree;
    if (x.minpoly.a2 != y.minpoly.a2) return x.minpoly.a2 < y.minpoly.a2;
    if (x.minpoly.a1 != y.minpoly.a1) return x.minpoly.a1 < y.minpoly.a1;
    if (x.minpoly.a0 != y.minpoly.a0) return x.minpoly.a0 < y.minpoly.a0;
    return cmp(x.value.surd_part(), y.value.surd_part()) > 0;  // +sqrt(D) root first
}

OrderedBSet build_ordered_bset(const QuadSurd& alpha, const EnumOptions& opt) {
    if (alpha.is_zero()) throw domain_error("B-set of 0");
    if (is_root_of_unity(alpha))
        throw domain_error("B-set of a root of unity (M_inf = 1 upstream)");

    MahlerValue m_alpha = mahler_surd(alpha);
    Int fm = floor_surd(m_alpha.value);
    if (fm > opt.guard)
        throw resource_error("enumeration guard exceeded: floor(M) = " + fm.get_str() + " > " +
                             std::to_string(opt.guard));
    std::vector<BSetEntry> entries;
    for (const Rat& r : enumerate_b1(m_alpha)) {
        QuadSurd v(r);
        entries.push_back(BSetEntry{v, minimal_polynomial(v), mbar(v), 1});
    }
    std::optional<Int> field_k;
    if (!alpha.is_rational()) {
        field_k = alpha.field_k();
        for (BSetEntry& e : enumerate_b2(minimal_polynomial(alpha), *field_k, opt)) {
            QuadSurd conj = e.value.conjugate();
            BSetEntry twin{conj, e.minpoly, mbar(conj), 2};
            entries.push_back(std::move(e));
            entries.push_back(std::move(twin));
        }
    }
    std::sort(entries.begin(), entries.end(), entry_order_less);
    return OrderedBSet{alpha, field_k, m_alpha, std::move(entries)};
}

std::vector<QuadSurd> OrderedBSet::plus_minus_closure() const {
    std::vector<QuadSurd> out;
    std::set<std::string> seen;
    for (const BSetEntry& e : entries)
        for (const QuadSurd& v : {e.value, -e.value})
            if (seen.insert(to_string(v)).second) out.push_back(v);
    return out;
}

nlohmann::json OrderedBSet::to_json(int digits) const {
    nlohmann::json arr = nlohmann::json::array();
    for (const BSetEntry& e : entries) {
        nlohmann::json coeffs = nlohmann::json::array();
        for (const Int* c : {&e.minpoly.a2, &e.minpoly.a1, &e.minpoly.a0}) {
            if (c->fits_slong_p())
                coeffs.push_back(c->get_si());
            else
                coeffs.push_back(c->get_str());
        }
        arr.push_back({{"value", to_string(e.value)},
                       {"minpoly", coeffs},
                       {"mbar", {{"exact", e.mbar.measure.str()},
                                 {"decimal", e.mbar.measure.decimal(digits)}}}});
    }
    return arr;
}

}  // namespace umahler
