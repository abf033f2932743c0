#include "umahler/places.hpp"

namespace umahler {

namespace {

Int mod_pos(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int pow_int(const Int& base, int e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Int powm(const Int& b, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int invm(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw domain_error("not invertible");
    return r;
}

// Tonelli-Shanks, p an odd prime, a a quadratic residue mod p.
Int sqrt_mod_p(const Int& a_in, const Int& p) {
    Int a = mod_pos(a_in, p);
    if (a == 0) return 0;
    if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1)
        throw domain_error("not a quadratic residue");
    if (mod_pos(p, 4) == 3) return powm(a, (p + 1) / 4, p);
    // write p-1 = q 2^s
    Int q = p - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);
    Int z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
    Int m = s, c = powm(z, q, p), t = powm(a, q, p), r = powm(a, (q + 1) / 2, p);
    while (t != 1) {
        Int tt = t;
        long i = 0;
        while (tt != 1) {
            tt = (tt * tt) % p;
            ++i;
        }
        Int b = c;
        for (Int j = 0; j < m - i - 1; ++j) b = (b * b) % p;
        m = i;
        c = (b * b) % p;
        t = (t * c) % p;
        r = (r * b) % p;
    }
    return r;
}

}  // namespace

SplitKind splitting_kind(const Int& k, const Int& p) {
    Int disc = (mod_pos(k, 4) == 1) ? k : Int(4 * k);
    int sym = mpz_kronecker(disc.get_mpz_t(), p.get_mpz_t());
    if (sym == 0) return SplitKind::ramified;
    return sym == 1 ? SplitKind::split : SplitKind::inert;
}

Int sqrt_mod_prime_power(const Int& a, const Int& p, int e) {
    if (e < 1) throw domain_error("precision must be >= 1");
    if (p == 2) {
        // requires a = 1 mod 8; maintain r = 1 mod 4 with r^2 = a one level ahead
        if (mod_pos(a, 8) != 1) throw domain_error("no 2-adic square root");
        Int r = 1;
        Int mod_next = 16;  // invariant: r^2 = a (mod 2*2^m), m starting at 3
        for (int m = 3; m < e + 1; ++m) {
            // mod_next = 2^(m+1)
            if (mod_pos(a - r * r, mod_next) != 0) r += pow_int(2, m - 1);
            mod_next *= 2;
        }
        return mod_pos(r, pow_int(p, e));
    }
    Int r = sqrt_mod_p(a, p);
    if (r > p - r) r = p - r;  // canonical branch
    Int pe = p;
    int have = 1;
    while (have < e) {
        int next = std::min(2 * have, e);
        Int pn = pow_int(p, next);
        // Newton: r <- r - (r^2 - a) / (2r) mod p^next
        Int num = mod_pos(r * r - a, pn);
        r = mod_pos(r - num * invm(mod_pos(2 * r, pn), pn), pn);
        have = next;
        pe = pn;
    }
    return r;
}

std::vector<PrimePlace> places_for(const Int& k, const std::vector<Int>& support_primes,
                                   int precision) {
    std::vector<PrimePlace> out;
    for (const Int& p : support_primes) {
        SplitKind kind = splitting_kind(k, p);
        if (kind == SplitKind::split) {
            Int root = sqrt_mod_prime_power(mod_pos(k, pow_int(p, precision)), p, precision);
            Int pe = pow_int(p, precision);
            out.push_back(PrimePlace{p, kind, k, 0, root, precision});
            out.push_back(PrimePlace{p, kind, k, 1, mod_pos(-root, pe), precision});
        } else {
            out.push_back(PrimePlace{p, kind, k, 0, 0, 0});
        }
    }
    return out;
}

Int valuation(const QuadSurd& x, const PrimePlace& place) {
    if (x.is_zero()) throw domain_error("valuation of 0");
    const Int& p = place.p;
    if (x.is_rational()) {
        Int v = valuation_rat(x.as_rational(), p);
        return place.kind == SplitKind::ramified ? Int(2 * v) : v;
    }
    if (x.field_k() != place.k) throw domain_error("surd outside the place's field");
    Rat n = x.norm();
    switch (place.kind) {
        case SplitKind::ramified:
            return valuation_rat(n, p);
        case SplitKind::inert: {
            Int v = valuation_rat(n, p);
            return v / 2;  // always even for inert places
        }
        case SplitKind::split: {
            // clear denominators: x = (u + v sqrt(k)) / w with u, v, w integers
            Int w;
            mpz_lcm(w.get_mpz_t(), rat_den(x.rational_part()).get_mpz_t(),
                    rat_den(x.surd_part()).get_mpz_t());
            Int u = rat_num(x.rational_part() * Rat(w));
            Int v = rat_num(x.surd_part() * Rat(w));
            Int vw = valuation_int(w, p);
            Int norm_z = u * u - v * v * place.k;
            Int bound = valuation_int(norm_z, p);
            if (bound == 0 && vw == 0) return 0;
            int need = static_cast<int>(bound.get_si()) + 1;
            Int pe = pow_int(p, need);
            Int root;
            if (place.precision >= need) {
                root = mod_pos(place.hensel_root, pe);  // already branch-adjusted
            } else {
                root = sqrt_mod_prime_power(mod_pos(place.k, pe), p, need);
                if (place.branch == 1) root = mod_pos(-root, pe);
            }
            Int t = mod_pos(u + v * root, pe);
            if (t == 0) throw domain_error("split valuation exceeded its bound");
            return valuation_int(t, p) - vw;
        }
    }
    throw domain_error("unreachable");
}

}  // namespace umahler
