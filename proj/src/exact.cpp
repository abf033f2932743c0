#include "umahler/exact.hpp"

#include <algorithm>
#include <array>

namespace umahler {

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw domain_error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

Rat rat_from_string(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return make_rat(Int(text), 1);
        return make_rat(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw parse_error("malformed rational '" + text + "'", 0);
    }
}

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int floor_rat(const Rat& q) { return floor_div(Int(q.get_num()), Int(q.get_den())); }

Int isqrt_floor(const Int& n) {
    if (n < 0) throw domain_error("isqrt of negative integer");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::optional<Int> is_perfect_square(const Int& n) {
    if (n < 0) return std::nullopt;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    return isqrt_floor(n);
}

namespace {

Int powm(const Int& base, const Int& exp, const Int& mod) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, unsigned long s) {
    Int x = powm(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return false;
    }
    return true;  // composite witness found
}

}  // namespace

bool is_prime(const Int& n_in) {
    Int n = abs(n_in);
    if (n < 2) return false;
    static const std::array<long, 12> bases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (long b : bases) {
        if (n == b) return true;
        if (n % b == 0) return false;
    }
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    // The 12 bases above decide primality for n < 3317044064679887385961981.
    for (long b : bases)
        if (miller_rabin_witness(n, Int(b), d, s)) return false;
    static const Int det_bound("3317044064679887385961981");
    if (n < det_bound) return true;
    static const std::array<long, 12> extra = {41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
    for (long b : extra)
        if (miller_rabin_witness(n, Int(b), d, s)) return false;
    return true;
}

Int Factorization::reconstruct() const {
    Int r = sign;
    for (const auto& [p, e] : factors)
        for (Int i = 0; i < e; ++i) r *= p;
    return r;
}

namespace {

constexpr long kTrialLimit = 1000000;

// Pollard-Brent rho with a fixed parameter sequence, so identical inputs
// always factor identically.
Int pollard_brent(const Int& n) {
    for (long c = 1;; ++c) {
        Int y = 2, m = 128, g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            x = y;
            for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
            Int k = 0;
            while (k < r && g == 1) {
                ys = y;
                Int lim = std::min(m, Int(r - k));
                for (Int i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    Int diff = abs(x - y);
                    q = (q * diff) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                Int diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g != n) return g;
    }
}

void factor_into(Int n, std::vector<std::pair<Int, Int>>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.emplace_back(n, 1);
        return;
    }
    Int d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

Factorization factorize(const Int& n_in) {
    if (n_in == 0) throw domain_error("factorize(0)");
    Factorization f;
    f.sign = n_in < 0 ? -1 : 1;
    Int n = abs(n_in);

    auto strip = [&](const Int& p) {
        if (n % p != 0) return;
        Int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.emplace_back(p, e);
    };

    strip(2);
    strip(3);
    for (long d = 5; d <= kTrialLimit && Int(d) * d <= n; d += 6) {
        strip(Int(d));
        strip(Int(d + 2));
    }
    if (n > 1) {
        if (is_prime(n)) {
            f.factors.emplace_back(n, 1);
        } else {
            std::vector<std::pair<Int, Int>> rest;
            factor_into(n, rest);
            std::sort(rest.begin(), rest.end());
            for (auto& [p, e] : rest) {
                if (!f.factors.empty() && f.factors.back().first == p)
                    f.factors.back().second += e;
                else
                    f.factors.emplace_back(p, e);
            }
        }
    }
    return f;
}

std::pair<Int, Int> squarefree_decompose(const Int& n) {
    if (n == 0) throw domain_error("squarefree_decompose(0)");
    Factorization fac = factorize(n);
    Int s = fac.sign, f = 1;
    for (const auto& [p, e] : fac.factors) {
        for (Int i = 0; i < e / 2; ++i) f *= p;
        if (e % 2 != 0) s *= p;
    }
    return {s, f};
}

bool is_squarefree(const Int& n) {
    if (n == 0) return false;
    return squarefree_decompose(n).second == 1;
}

Int valuation_int(const Int& n, const Int& p) {
    if (n == 0) throw domain_error("valuation of 0");
    Int rem;
    unsigned long v = mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    return Int(v);
}

Int valuation_rat(const Rat& q, const Int& p) {
    if (q == 0) throw domain_error("valuation of 0");
    return valuation_int(rat_num(q), p) - valuation_int(rat_den(q), p);
}

std::optional<Int> largest_prime_of(const Rat& r) {
    if (r == 0) throw domain_error("largest_prime_of(0)");
    Int best = 0;
    for (const Int& part : {rat_num(r), rat_den(r)}) {
        if (abs(part) == 1) continue;
        Factorization f = factorize(part);
        for (const auto& [p, e] : f.factors) best = std::max(best, p);
    }
    if (best == 0) return std::nullopt;  // r = +-1
    return best;
}

}  // namespace umahler
