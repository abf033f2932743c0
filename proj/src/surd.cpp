#include "umahler/surd.hpp"

#include <cctype>
#include <set>

namespace umahler {

namespace {

// Squarefree validation is on every QuadSurd construction, so memoize per k.
bool known_squarefree(const Int& k) {
    thread_local std::set<Int> ok;
    if (ok.count(k)) return true;
    if (!is_squarefree(k)) return false;
    ok.insert(k);
    return true;
}

void check_field_k(const Int& k) {
    if (k == 0 || k == 1) throw domain_error("field index k must not be 0 or 1");
    if (!known_squarefree(k)) throw domain_error("field index k must be squarefree");
}

}  // namespace

SquarefreeK::SquarefreeK(Int k_in) : k(std::move(k_in)) { check_field_k(k); }

QuadSurd::QuadSurd(const Rat& a, const Rat& b, const Int& k) : a_(a), b_(b), k_(k) {
    if (b_ == 0) {
        k_ = 0;
    } else {
        check_field_k(k_);
    }
}

const Rat& QuadSurd::as_rational() const {
    if (!is_rational()) throw domain_error("surd is not rational");
    return a_;
}

Int QuadSurd::joint_field(const QuadSurd& x, const QuadSurd& y) {
    if (x.k_ == 0) return y.k_;
    if (y.k_ == 0) return x.k_;
    if (x.k_ != y.k_) throw domain_error("mixed quadratic fields");
    return x.k_;
}

QuadSurd QuadSurd::conjugate() const { return QuadSurd(a_, -b_, k_); }

QuadSurd QuadSurd::inverse() const {
    if (is_zero()) throw domain_error("division by zero");
    Rat n = norm();
    return QuadSurd(a_ / n, -b_ / n, k_);
}

QuadSurd operator+(const QuadSurd& x, const QuadSurd& y) {
    Int k = QuadSurd::joint_field(x, y);
    return QuadSurd(x.a_ + y.a_, x.b_ + y.b_, k);
}

QuadSurd operator-(const QuadSurd& x, const QuadSurd& y) {
    Int k = QuadSurd::joint_field(x, y);
    return QuadSurd(x.a_ - y.a_, x.b_ - y.b_, k);
}

QuadSurd operator*(const QuadSurd& x, const QuadSurd& y) {
    Int k = QuadSurd::joint_field(x, y);
    return QuadSurd(x.a_ * y.a_ + x.b_ * y.b_ * Rat(k), x.a_ * y.b_ + x.b_ * y.a_, k);
}

QuadSurd operator/(const QuadSurd& x, const QuadSurd& y) { return x * y.inverse(); }

QuadSurd QuadSurd::pow(const Int& e) const {
    if (e < 0) return inverse().pow(-e);
    if (is_zero()) {
        if (e == 0) throw domain_error("0^0");
        return QuadSurd();
    }
    QuadSurd acc(1), base = *this;
    size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return acc;
    for (size_t i = 0; i < nbits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = acc * base;
        if (i + 1 < nbits) base = base * base;
    }
    return acc;
}

int sign_of(const QuadSurd& x) {
    int sa = sgn(x.rational_part());
    if (x.is_rational()) return sa;
    if (x.field_k() < 0) throw domain_error("sign of an imaginary value");
    int sb = sgn(x.surd_part());
    if (sa >= 0 && sb > 0) return 1;
    if (sa <= 0 && sb < 0) return -1;
    // opposite signs: compare a^2 against b^2 k
    Rat lhs = x.rational_part() * x.rational_part();
    Rat rhs = x.surd_part() * x.surd_part() * Rat(x.field_k());
    int c = cmp(lhs, rhs);
    return sa > 0 ? (c >= 0 ? 1 : -1)   // a > 0 > b: positive iff a^2 > b^2 k
                  : (c > 0 ? -1 : 1);   // a < 0 < b (c == 0 impossible: sqrt(k) irrational)
}

int compare(const QuadSurd& x, const QuadSurd& y) { return sign_of(x - y); }

std::pair<Rat, Rat> rational_enclosure(const QuadSurd& x, unsigned precision_bits) {
    if (!x.is_real()) throw domain_error("enclosure of an imaginary value");
    if (x.is_rational()) return {x.rational_part(), x.rational_part()};
    Int scaled = x.field_k();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * precision_bits);
    Int s = isqrt_floor(scaled);
    Int den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), precision_bits);
    Rat lo_root = make_rat(s, den), hi_root = make_rat(s + 1, den);
    Rat lo, hi;
    if (x.surd_part() > 0) {
        lo = x.rational_part() + x.surd_part() * lo_root;
        hi = x.rational_part() + x.surd_part() * hi_root;
    } else {
        lo = x.rational_part() + x.surd_part() * hi_root;
        hi = x.rational_part() + x.surd_part() * lo_root;
    }
    return {lo, hi};
}

Int floor_surd(const QuadSurd& x) {
    if (x.is_rational()) return floor_rat(x.rational_part());
    for (unsigned bits = 32;; bits *= 2) {
        auto [lo, hi] = rational_enclosure(x, bits);
        Int flo = floor_rat(lo), fhi = floor_rat(hi);
        if (flo == fhi) return flo;
    }
}

std::optional<int> is_root_of_unity(const QuadSurd& x) {
    if (x.is_rational()) {
        if (x.rational_part() == 1) return 1;
        if (x.rational_part() == -1) return 2;
        return std::nullopt;
    }
    const Rat half = make_rat(1, 2);
    if (x.field_k() == -1 && x.rational_part() == 0 && abs(x.surd_part()) == 1) return 4;
    if (x.field_k() == -3 && abs(x.rational_part()) == half && abs(x.surd_part()) == half)
        return x.rational_part() > 0 ? 6 : 3;
    return std::nullopt;
}

std::vector<QuadSurd> torsion_elements(const Int& k) {
    std::vector<QuadSurd> out = {QuadSurd(1), QuadSurd(-1)};
    if (k == -1) {
        out.emplace_back(make_rat(0), make_rat(1), Int(-1));
        out.emplace_back(make_rat(0), make_rat(-1), Int(-1));
    } else if (k == -3) {
        for (int a : {1, -1})
            for (int b : {1, -1})
                out.emplace_back(make_rat(a, 2), make_rat(b, 2), Int(-3));
    }
    return out;
}

std::string decimal_expand(const QuadSurd& x, int digits) {
    if (digits < 0) throw domain_error("digit count must be nonnegative");
    if (!x.is_real()) throw domain_error("decimal expansion of an imaginary value");
    int sg = sign_of(x);
    QuadSurd ax = sg < 0 ? -x : x;
    Int pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, digits);
    const Rat half = make_rat(1, 2);
    Int n;
    if (ax.is_rational()) {
        n = floor_rat(ax.as_rational() * Rat(pow10) + half);
    } else {
        for (unsigned bits = 64;; bits *= 2) {
            auto [lo, hi] = rational_enclosure(ax, bits);
            Int nlo = floor_rat(lo * Rat(pow10) + half);
            Int nhi = floor_rat(hi * Rat(pow10) + half);
            if (nlo == nhi) {
                n = nlo;
                break;
            }
        }
    }
    std::string ds = n.get_str();
    std::string sign = (sg < 0 && n != 0) ? "-" : "";
    if (digits == 0) return sign + ds;
    if (ds.size() <= static_cast<size_t>(digits))
        ds = std::string(digits + 1 - ds.size(), '0') + ds;
    ds.insert(ds.size() - digits, ".");
    return sign + ds;
}

std::string to_string(const QuadSurd& x) {
    if (x.is_rational()) return rat_to_string(x.rational_part());
    Int r;
    mpz_lcm(r.get_mpz_t(), rat_den(x.rational_part()).get_mpz_t(),
            rat_den(x.surd_part()).get_mpz_t());
    Int p = rat_num(x.rational_part() * Rat(r));
    Int q = rat_num(x.surd_part() * Rat(r));
    Int g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.get_mpz_t());
    p /= g;
    q /= g;
    r /= g;
    std::string core;
    if (p != 0) {
        core += p.get_str();
        if (q > 0) core += "+";
    }
    if (q < 0) core += "-";
    Int qa = abs(q);
    if (qa != 1) core += qa.get_str() + "*";
    core += "sqrt(" + x.field_k().get_str() + ")";
    if (r == 1) return core;
    return "(" + core + ")/" + r.get_str();
}

namespace {

struct SurdParser {
    const std::string& s;
    size_t i = 0;

    explicit SurdParser(const std::string& text) : s(text) {}

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool accept(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw parse_error(std::string("expected '") + c + "'", i);
    }
    bool accept_word(const char* w) {
        skip();
        size_t n = std::char_traits<char>::length(w);
        if (s.compare(i, n, w) == 0) {
            i += n;
            return true;
        }
        return false;
    }
    Int parse_uint() {
        skip();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw parse_error("expected an integer", i);
        return Int(s.substr(start, i - start));
    }
    Int parse_int() {
        skip();
        bool neg = accept('-');
        Int v = parse_uint();
        return neg ? Int(-v) : v;
    }

    // One term: "n", "sqrt(k)" or "n*sqrt(k)". Adds it into (a, b, k).
    void parse_term(bool negate, Rat& a, Rat& b, Int& k) {
        skip();
        Int coeff = 1;
        bool have_coeff = false;
        if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])))) {
            coeff = parse_uint();
            have_coeff = true;
            if (!accept('*')) {
                a += Rat(negate ? Int(-coeff) : coeff);
                return;
            }
        }
        if (!accept_word("sqrt")) {
            if (have_coeff) throw parse_error("expected 'sqrt' after '*'", i);
            throw parse_error("expected a term", i);
        }
        expect('(');
        Int kin = parse_int();
        expect(')');
        if (negate) coeff = -coeff;
        if (kin == 0) return;  // sqrt(0) contributes nothing
        auto [sf, f] = squarefree_decompose(kin);
        if (sf == 1) {
            a += Rat(coeff * f);
            return;
        }
        if (k != 0 && k != sf) throw parse_error("mixed quadratic fields in input", i);
        k = sf;
        b += Rat(coeff * f);
    }

    // term (('+'|'-') term)*
    void parse_inner(Rat& a, Rat& b, Int& k, int& nterms) {
        bool neg = accept('-');
        parse_term(neg, a, b, k);
        nterms = 1;
        for (;;) {
            skip();
            if (accept('+')) {
                parse_term(false, a, b, k);
            } else if (accept('-')) {
                parse_term(true, a, b, k);
            } else {
                return;
            }
            ++nterms;
        }
    }

    QuadSurd parse() {
        skip();
        // a leading '-' negates the whole expression only before '(',
        // otherwise it belongs to the first term
        bool neg = false;
        size_t mark = i;
        if (accept('-')) {
            skip();
            if (i < s.size() && s[i] == '(') {
                neg = true;
            } else {
                i = mark;
            }
        }
        Rat a(0), b(0);
        Int k = 0;
        int nterms = 0;
        bool parenthesized = accept('(');
        parse_inner(a, b, k, nterms);
        if (parenthesized) expect(')');
        if (accept('/')) {
            if (!parenthesized && nterms > 1)
                throw parse_error("parenthesize the numerator before '/'", i);
            Int r = parse_uint();
            if (r == 0) throw parse_error("division by zero", i);
            a /= Rat(r);
            b /= Rat(r);
        }
        skip();
        if (i != s.size()) throw parse_error("unexpected trailing input", i);
        if (neg) {
            a = -a;
            b = -b;
        }
        return QuadSurd(a, b, k);
    }
};

}  // namespace

QuadSurd parse_surd(const std::string& text) { return SurdParser(text).parse(); }

QuadPoly::QuadPoly(const Int& c2, const Int& c1, const Int& c0) : a2(c2), a1(c1), a0(c0) {
    if (a2 == 0 && a1 == 0) throw domain_error("constant polynomial");
    const Int& lead = a2 != 0 ? a2 : a1;
    if (lead < 0) {
        a2 = -a2;
        a1 = -a1;
        a0 = -a0;
    }
    Int g;
    mpz_gcd(g.get_mpz_t(), a2.get_mpz_t(), a1.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a0.get_mpz_t());
    a2 /= g;
    a1 /= g;
    a0 /= g;
    if (a2 != 0 && is_perfect_square(discriminant()))
        throw domain_error("reducible quadratic polynomial");
}

QuadSurd QuadPoly::eval(const QuadSurd& x) const {
    return QuadSurd(a2) * x * x + QuadSurd(a1) * x + QuadSurd(a0);
}

std::string QuadPoly::to_string() const {
    auto term = [](const Int& c, const char* var, bool lead) -> std::string {
        if (c == 0) return "";
        std::string out;
        if (lead) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        Int ac = abs(c);
        if (ac != 1 || var[0] == '\0') out += ac.get_str();
        out += var;
        return out;
    };
    std::string out;
    if (a2 != 0) out += term(a2, "x^2", true);
    out += term(a1, "x", out.empty());
    out += term(a0, "", out.empty());
    return out;
}

QuadPoly minimal_polynomial(const QuadSurd& x) {
    if (x.is_rational()) {
        const Rat& r = x.rational_part();
        return QuadPoly(0, rat_den(r), -rat_num(r));
    }
    Rat t = x.trace(), n = x.norm();
    Int den;
    mpz_lcm(den.get_mpz_t(), rat_den(t).get_mpz_t(), rat_den(n).get_mpz_t());
    return QuadPoly(den, rat_num(-t * Rat(den)), rat_num(n * Rat(den)));
}

QuadSurd poly_root(const QuadPoly& f, const Int& k, bool plus) {
    if (f.degree() == 1) return QuadSurd(make_rat(-f.a0, f.a1));
    Int disc = f.discriminant();
    if (disc % k != 0) throw domain_error("discriminant does not live in Q(sqrt(k))");
    auto fs = is_perfect_square(disc / k);
    if (!fs) throw domain_error("discriminant does not live in Q(sqrt(k))");
    Int q = plus ? *fs : Int(-*fs);
    return QuadSurd(make_rat(-f.a1, 2 * f.a2), make_rat(q, 2 * f.a2), k);
}

QuadSurd fundamental_unit(const Int& k) {
    if (k <= 0) throw domain_error("fundamental unit requires a real quadratic field (k > 0)");
    check_field_k(k);
    Int a0 = isqrt_floor(k);

    // Continued fraction of sqrt(k): the convergent just before the period
    // closes (Q returns to 1) solves x^2 - k y^2 = +-1 minimally.
    Int P = 0, Q = 1, a = a0;
    Int h_prev = 1, h_cur = a0, q_prev = 0, q_cur = 1;
    for (;;) {
        P = a * Q - P;
        Q = (k - P * P) / Q;
        if (Q == 1) break;
        a = floor_div(a0 + P, Q);
        Int h = a * h_cur + h_prev, qq = a * q_cur + q_prev;
        h_prev = h_cur;
        h_cur = h;
        q_prev = q_cur;
        q_cur = qq;
    }
    Int x1 = h_cur, y1 = q_cur;
    Int n = x1 * x1 - k * y1 * y1;  // +-1

    if (k % 4 == 1) {
        // A half-integer unit eps = (x + y sqrt(k))/2 with eps^3 = x1 + y1 sqrt(k)
        // satisfies x^3 - 3nx = 2 x1; recover it exactly if it exists.
        Int target = 2 * x1;
        Int xg;
        mpz_root(xg.get_mpz_t(), target.get_mpz_t(), 3);
        for (Int x = xg - 2; x <= xg + 2; ++x) {
            if (x <= 0 || x % 2 == 0) continue;
            if (x * x * x - 3 * n * x != target) continue;
            Int t = x * x - 4 * n;
            if (t % k != 0) continue;
            auto y = is_perfect_square(t / k);
            if (!y || *y == 0 || *y % 2 == 0) continue;
            return QuadSurd(make_rat(x, 2), make_rat(*y, 2), k);
        }
    }
    return QuadSurd(make_rat(x1, 1), make_rat(y1, 1), k);
}

}  // namespace umahler
