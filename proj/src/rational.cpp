#include "probenv/rational.hpp"

namespace probenv {

Rational parse_number(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ParseError("empty numeric literal");
    bool neg = false;
    size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }
    std::string digits, frac, den;
    enum { INT, FRAC, DEN } st = INT;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            (st == INT ? digits : st == FRAC ? frac : den) += c;
        } else if (c == '.' && st == INT) {
            st = FRAC;
        } else if (c == '/' && st == INT && !digits.empty()) {
            st = DEN;
        } else {
            throw ParseError("malformed numeric literal '" + s + "'");
        }
    }
    if (st == DEN) {
        if (den.empty()) throw ParseError("malformed fraction '" + s + "'");
        Integer q(den);
        if (q == 0) throw ParseError("zero denominator in '" + s + "'");
        Rational r(Integer(digits), q);
        r.canonicalize();
        return neg ? Rational(-r) : r;
    }
    if (digits.empty() && frac.empty()) throw ParseError("malformed numeric literal '" + s + "'");
    Integer num(digits.empty() ? "0" : digits);
    Rational r(num);
    if (st == FRAC && !frac.empty()) {
        Integer f(frac);
        Integer scale(1);
        for (size_t k = 0; k < frac.size(); ++k) scale *= 10;
        r += Rational(f, scale);
    }
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

std::string rat_str(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational rat_pow(const Rational& base, unsigned exp) {
    Rational acc(1);
    Rational b = base;
    unsigned e = exp;
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

static Rational round_bits(const Rational& r, unsigned bits, bool up) {
    if (mpz_sizeinbase(r.get_den().get_mpz_t(), 2) <= bits) return r;
    Integer scaled_num = r.get_num() << bits;
    Integer q;
    if (up) {
        mpz_cdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), r.get_den().get_mpz_t());
    } else {
        mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), r.get_den().get_mpz_t());
    }
    Rational out(q, Integer(1) << bits);
    out.canonicalize();
    return out;
}

Rational round_down_bits(const Rational& r, unsigned bits) { return round_bits(r, bits, false); }
Rational round_up_bits(const Rational& r, unsigned bits) { return round_bits(r, bits, true); }

}  // namespace probenv
