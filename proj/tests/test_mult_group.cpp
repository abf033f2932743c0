#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "umahler/multgroup.hpp"

using namespace umahler;

namespace {

std::mt19937_64 rng(31415);

QuadSurd surd(long an, long ad, long bn, long bd, long k) {
    return QuadSurd(make_rat(an, ad), make_rat(bn, bd), Int(k));
}

QuadSurd random_nonzero_surd(long k, long span = 10) {
    for (;;) {
        long an = static_cast<long>(rng() % (2 * span + 1)) - span;
        long bn = static_cast<long>(rng() % (2 * span + 1)) - span;
        long d = 1 + static_cast<long>(rng() % 4);
        QuadSurd x(make_rat(an, d), make_rat(bn, d), Int(k));
        if (!x.is_zero()) return x;
    }
}

const PrimePlace& find_place(const std::vector<PrimePlace>& places, long p, int branch = 0) {
    for (const PrimePlace& pl : places)
        if (pl.p == p && pl.branch == branch) return pl;
    throw std::runtime_error("place not found");
}

// reduce a vector against an HNF basis; zero remainder = lattice membership
bool lattice_contains(const IntMat& basis, IntVec v) {
    for (const IntVec& row : basis) {
        size_t p = 0;
        while (p < row.size() && row[p] == 0) ++p;
        if (p == row.size()) continue;
        if (v[p] % row[p] != 0) continue;
        Int q = v[p] / row[p];
        for (size_t j = 0; j < v.size(); ++j) v[j] -= q * row[j];
    }
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

// Exhaustive membership search: alpha^s * (+-1) = prod gens^e with s <= 6,
// |e_i| <= 6. Rational generators only.
bool brute_force_member(const Rat& alpha, const std::vector<Rat>& gens) {
    std::vector<long> e(gens.size(), -6);
    for (long s = 1; s <= 6; ++s) {
        std::fill(e.begin(), e.end(), -6L);
        for (;;) {
            Rat prod(1);
            for (size_t i = 0; i < gens.size(); ++i) {
                Rat base = gens[i];
                for (long t = 0; t < std::abs(e[i]); ++t)
                    prod = e[i] > 0 ? Rat(prod * base) : Rat(prod / base);
            }
            Rat as(1);
            for (long t = 0; t < s; ++t) as *= alpha;
            if (as == prod || as == -prod) return true;
            size_t idx = 0;
            while (idx < e.size() && e[idx] == 6) e[idx++] = -6;
            if (idx == e.size()) break;
            ++e[idx];
        }
        if (gens.empty()) {
            Rat as(1);
            for (long t = 0; t < s; ++t) as *= alpha;
            if (as == 1 || as == -1) return true;
        }
    }
    return false;
}

Rat random_smooth_rational() {
    static const long primes[] = {2, 3, 5, 7, 11, 13};
    Rat r(1);
    for (long p : primes) {
        long e = static_cast<long>(rng() % 7) - 3;
        if (rng() % 2) e = 0;  // keep support sparse
        for (long t = 0; t < std::abs(e); ++t) r = e > 0 ? Rat(r * p) : Rat(r / p);
    }
    if (rng() % 4 == 0) r = -r;
    return r;
}

}  // namespace

TEST_CASE("splitting kinds") {
    CHECK(splitting_kind(21, 3) == SplitKind::ramified);  // 3 | 21
    CHECK(splitting_kind(21, 5) == SplitKind::split);     // 21 = 1 is a QR mod 5
    CHECK(splitting_kind(-1, 3) == SplitKind::inert);     // -1 is not a QR mod 3
    CHECK(splitting_kind(-1, 5) == SplitKind::split);
    CHECK(splitting_kind(-1, 2) == SplitKind::ramified);
    CHECK(splitting_kind(17, 2) == SplitKind::split);     // 17 = 1 mod 8
    CHECK(splitting_kind(5, 2) == SplitKind::inert);      // 5 mod 8 = 5
    CHECK(splitting_kind(21, 2) == SplitKind::inert);
}

TEST_CASE("hensel roots square to k") {
    auto places = places_for(21, {Int(5)}, 12);
    REQUIRE(places.size() == 2);
    Int mod = 1;
    for (int i = 0; i < 12; ++i) mod *= 5;
    for (const PrimePlace& pl : places) {
        Int r2;
        mpz_powm_ui(r2.get_mpz_t(), pl.hensel_root.get_mpz_t(), 2, mod.get_mpz_t());
        Int km;
        mpz_mod(km.get_mpz_t(), Int(21).get_mpz_t(), mod.get_mpz_t());
        CHECK(r2 == km);
    }
    CHECK((places[0].hensel_root + places[1].hensel_root) % mod == 0);
    CHECK(places[0].hensel_root % 5 == 1);  // canonical least root: 21 = 1 mod 5

    // 2-adic roots for k = 17 (split at 2)
    auto p2 = places_for(17, {Int(2)}, 20);
    Int mod2 = 1;
    mpz_mul_2exp(mod2.get_mpz_t(), mod2.get_mpz_t(), 20);
    for (const PrimePlace& pl : p2) {
        Int r2 = (pl.hensel_root * pl.hensel_root) % mod2;
        CHECK(r2 == Int(17) % mod2);
    }
}

TEST_CASE("valuation examples") {
    auto places21 = places_for(21, {Int(2), Int(3), Int(5)});
    const PrimePlace& above3 = find_place(places21, 3);
    CHECK(valuation(surd(3, 2, 1, 2, 21), above3) == 1);  // Norm = -3
    for (const PrimePlace& pl : places21)
        CHECK(valuation(surd(5, 2, 1, 2, 21), pl) == 0);  // Norm = 1, a unit
    CHECK(valuation(QuadSurd(4), above3) == 0);
    CHECK(valuation(QuadSurd(4), find_place(places21, 2)) == 2);  // inert: v_2(16)/2
    CHECK_THROWS_AS(valuation(QuadSurd(0), above3), domain_error);
}

TEST_CASE("valuations are norm-consistent and additive") {
    for (long k : {-3, -1, 2, 5, 21}) {
        std::vector<Int> primes = {2, 3, 5, 7};
        auto places = places_for(Int(k), primes);
        for (int i = 0; i < 200; ++i) {
            QuadSurd x = random_nonzero_surd(k);
            for (const Int& p : primes) {
                Int total = 0;
                int nplaces = 0;
                SplitKind kind = splitting_kind(Int(k), p);
                for (const PrimePlace& pl : places) {
                    if (pl.p != p) continue;
                    ++nplaces;
                    total += valuation(x, pl);
                }
                Int norm_val = valuation_rat(x.norm(), p);
                if (kind == SplitKind::split) {
                    CHECK(nplaces == 2);
                    CHECK(total == norm_val);
                } else if (kind == SplitKind::inert) {
                    CHECK(2 * total == norm_val);
                } else {
                    CHECK(total == norm_val);
                }
            }
            QuadSurd y = random_nonzero_surd(k);
            for (const PrimePlace& pl : places)
                CHECK(valuation(x * y, pl) == valuation(x, pl) + valuation(y, pl));
        }
    }
}

TEST_CASE("relation lattice examples") {
    SUBCASE("4 and 2") {
        RelationLattice rl = relation_lattice({QuadSurd(4), QuadSurd(2)});
        REQUIRE(rl.basis.size() == 1);
        CHECK(rl.basis[0] == IntVec{1, -2});
    }
    SUBCASE("paper relation alpha = 1/3 * (-(3+sqrt(21))/2)^2") {
        std::vector<QuadSurd> gens = {surd(5, 2, 1, 2, 21), QuadSurd(make_rat(1, 3)),
                                      surd(-3, 2, -1, 2, 21)};
        RelationLattice rl = relation_lattice(gens);
        CHECK(lattice_contains(rl.basis, IntVec{1, -1, -2}));
    }
    SUBCASE("independent primes") {
        CHECK(relation_lattice({QuadSurd(2), QuadSurd(3)}).basis.empty());
    }
    SUBCASE("torsion-only generator") {
        RelationLattice rl = relation_lattice({QuadSurd(-1)});
        REQUIRE(rl.basis.size() == 1);
        CHECK(rl.basis[0] == IntVec{1});
    }
    SUBCASE("real units are handled through the fundamental unit") {
        // (5+sqrt(21))/2 is the fundamental unit; its square is dependent
        RelationLattice rl =
            relation_lattice({surd(5, 2, 1, 2, 21), surd(23, 2, 5, 2, 21)});  // eps, eps^2
        REQUIRE(rl.basis.size() == 1);
        CHECK(rl.basis[0] == IntVec{2, -1});
    }
    SUBCASE("mixed fields rejected") {
        CHECK_THROWS_AS(relation_lattice({surd(1, 1, 1, 1, 2), surd(1, 1, 1, 1, 3)}),
                        domain_error);
    }
}

TEST_CASE("class number does not matter: k = -5") {
    QuadSurd g1 = surd(1, 1, 1, 1, -5);   // 1 + sqrt(-5), norm 6
    QuadSurd g2 = surd(1, 1, -1, 1, -5);  // conjugate
    RelationLattice rl = relation_lattice({QuadSurd(2), QuadSurd(3), g1, g2});
    CHECK(lattice_contains(rl.basis, IntVec{1, 1, -1, -1}));  // 6 = (1+s)(1-s)

    auto w = member_mod_torsion(QuadSurd(6), {g1, g2});
    REQUIRE(w.has_value());
    CHECK(w->s == 1);
    CHECK(w->exps == IntVec{1, 1});
}

TEST_CASE("membership examples") {
    SUBCASE("4 never lands in <1>") {
        CHECK_FALSE(member_mod_torsion(QuadSurd(4), {QuadSurd(1)}).has_value());
    }
    SUBCASE("4 = 2^2") {
        auto w = member_mod_torsion(QuadSurd(4), {QuadSurd(1), QuadSurd(2)});
        REQUIRE(w.has_value());
        CHECK(w->s == 1);
        CHECK(w->zeta == QuadSurd(1));
        CHECK(w->exps == IntVec{0, 2});
    }
    SUBCASE("alpha leaves the rational span") {
        std::vector<QuadSurd> rats;
        for (const char* t : {"1", "2", "1/2", "3", "1/3", "2/3", "3/2"})
            rats.push_back(QuadSurd(rat_from_string(t)));
        CHECK_FALSE(member_mod_torsion(surd(5, 2, 1, 2, 21), rats).has_value());

        rats.push_back(surd(-3, 2, -1, 2, 21));  // the paper's -(3+sqrt(21))/2
        auto w = member_mod_torsion(surd(5, 2, 1, 2, 21), rats);
        REQUIRE(w.has_value());
        CHECK(w->s == 1);
        CHECK(w->zeta == QuadSurd(1));
        // alpha = 3^-1 * (-(3+sqrt(21))/2)^2
        CHECK(w->exps[7] == 2);
        QuadSurd prod(1);
        for (size_t i = 0; i < rats.size(); ++i) prod = prod * rats[i].pow(w->exps[i]);
        CHECK(prod == surd(5, 2, 1, 2, 21));
    }
}

TEST_CASE("witnesses verify exactly on random instances") {
    for (int t = 0; t < 60; ++t) {
        std::vector<QuadSurd> gens;
        size_t m = 1 + rng() % 3;
        for (size_t i = 0; i < m; ++i) gens.push_back(QuadSurd(random_smooth_rational()));
        // alpha = torsion * product of powers of the generators, sometimes foiled
        Rat alpha(1);
        for (const QuadSurd& g : gens) {
            long e = static_cast<long>(rng() % 5) - 2;
            for (long i = 0; i < std::abs(e); ++i)
                alpha = e > 0 ? Rat(alpha * g.as_rational()) : Rat(alpha / g.as_rational());
        }
        if (rng() % 2) alpha = -alpha;
        if (rng() % 3 == 0) alpha *= 7;  // often not in the span
        if (alpha == 1 || alpha == -1) continue;
        auto w = member_mod_torsion(QuadSurd(alpha), gens);
        if (!w) continue;
        QuadSurd lhs = QuadSurd(alpha).pow(w->s) * w->zeta;
        QuadSurd rhs(1);
        for (size_t i = 0; i < gens.size(); ++i) rhs = rhs * gens[i].pow(w->exps[i]);
        CHECK(lhs == rhs);
        CHECK(w->s >= 1);
        CHECK(is_root_of_unity(w->zeta).value() == w->zeta_order);
    }
}

TEST_CASE("brute force membership oracle agreement") {
    int checked = 0;
    for (int t = 0; t < 80; ++t) {
        size_t m = 1 + rng() % 3;
        std::vector<Rat> gens_r;
        std::vector<QuadSurd> gens;
        for (size_t i = 0; i < m; ++i) {
            Rat g = random_smooth_rational();
            if (g == 0) g = 2;
            gens_r.push_back(g);
            gens.push_back(QuadSurd(g));
        }
        Rat alpha = random_smooth_rational();
        if (alpha == 1 || alpha == -1 || alpha == 0) continue;
        bool brute = brute_force_member(alpha, gens_r);
        bool lattice = member_mod_torsion(QuadSurd(alpha), gens).has_value();
        CHECK(brute == lattice);
        ++checked;
    }
    CHECK(checked > 40);
}

TEST_CASE("incremental scanner matches the naive per-prefix recomputation") {
    for (int t = 0; t < 40; ++t) {
        long k = (t % 2 == 0) ? 21 : 5;
        std::vector<QuadSurd> candidates;
        size_t m = 2 + rng() % 5;
        for (size_t i = 0; i < m; ++i) {
            if (rng() % 2) {
                Rat r = random_smooth_rational();
                candidates.push_back(QuadSurd(r == 0 ? Rat(2) : r));
            } else {
                candidates.push_back(random_nonzero_surd(k, 5));
            }
        }
        QuadSurd alpha = random_nonzero_surd(k, 5);
        MembershipScanner scanner(alpha, candidates);
        for (size_t j = 1; j <= candidates.size(); ++j) {
            bool inc = scanner.extend();
            std::vector<QuadSurd> prefix(candidates.begin(), candidates.begin() + j);
            bool naive = member_mod_torsion(alpha, prefix).has_value();
            CHECK(inc == naive);
        }
    }
}

TEST_CASE("witness serialization shape") {
    auto w = member_mod_torsion(QuadSurd(4), {QuadSurd(1), QuadSurd(2)});
    REQUIRE(w.has_value());
    nlohmann::json j = w->to_json({QuadSurd(1), QuadSurd(2)});
    CHECK(j["s"] == 1);
    CHECK(j["zeta"]["order"] == 1);
    CHECK(j["zeta"]["value"] == "1");
    REQUIRE(j["factors"].size() == 1);
    CHECK(j["factors"][0]["base"] == "2");
    CHECK(j["factors"][0]["exp"] == 2);
}
