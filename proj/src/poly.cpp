#include "probenv/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace probenv {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r;
    auto ia = a.powers.begin(), ib = b.powers.begin();
    while (ia != a.powers.end() || ib != b.powers.end()) {
        if (ib == b.powers.end() || (ia != a.powers.end() && ia->first < ib->first)) {
            r.powers.push_back(*ia++);
        } else if (ia == a.powers.end() || ib->first < ia->first) {
            r.powers.push_back(*ib++);
        } else {
            r.powers.emplace_back(ia->first, ia->second + ib->second);
            ++ia, ++ib;
        }
    }
    return r;
}

bool GradedLex::operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db;
    // lexicographic on exponents from lowest var; larger exponent on the
    // earliest differing variable sorts first
    auto ia = a.powers.begin(), ib = b.powers.begin();
    while (ia != a.powers.end() && ib != b.powers.end()) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) return ia->second > ib->second;
        ++ia, ++ib;
    }
    return (ia != a.powers.end());
}

Polynomial Polynomial::constant(Rational c, VarSpace s) {
    Polynomial p(s);
    if (c != 0) p.terms_[Monomial::one()] = std::move(c);
    return p;
}

Polynomial Polynomial::variable(VarId v, VarSpace s) {
    Polynomial p(s);
    p.terms_[Monomial::var(v)] = 1;
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.powers.empty());
}

Rational Polynomial::constant_value() const {
    auto it = terms_.find(Monomial::one());
    return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::total_degree() const {
    unsigned d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

uint32_t Polynomial::degree_in(VarId v) const {
    uint32_t d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.degree_in(v));
    return d;
}

std::set<VarId> Polynomial::vars() const {
    std::set<VarId> s;
    for (auto& [m, c] : terms_)
        for (auto& [v, e] : m.powers) s.insert(v);
    return s;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (space_ != o.space_ && !is_zero() && !o.is_zero())
        throw std::logic_error("polynomial universe mismatch");
    Polynomial r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const { return scale(Rational(-1)); }

Polynomial Polynomial::scale(const Rational& c) const {
    Polynomial r(space_);
    if (c == 0) return r;
    for (auto& [m, cc] : terms_) r.terms_[m] = cc * c;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (space_ != o.space_ && !is_zero() && !o.is_zero())
        throw std::logic_error("polynomial universe mismatch");
    Polynomial r(space_);
    for (auto& [m1, c1] : terms_) {
        for (auto& [m2, c2] : o.terms_) {
            r.add_term(mono_mul(m1, m2), c1 * c2);
            if (r.terms_.size() > kTermGuard)
                throw TermGuardExceeded("polynomial expansion exceeds term guard");
        }
    }
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial acc = Polynomial::constant(1, space_);
    Polynomial b = *this;
    while (e) {
        if (e & 1) acc = acc * b;
        b = (e >>= 1) ? b * b : b;
    }
    return acc;
}

Rational Polynomial::eval(const std::function<Rational(VarId)>& point) const {
    Rational total(0);
    for (auto& [m, c] : terms_) {
        Rational t = c;
        for (auto& [v, e] : m.powers) t *= rat_pow(point(v), e);
        total += t;
    }
    return total;
}

Polynomial Polynomial::subst(VarId var, const Polynomial& repl) const {
    Polynomial r(space_);
    for (auto& [m, c] : terms_) {
        uint32_t e = m.degree_in(var);
        if (e == 0) {
            r.add_term(m, c);
            continue;
        }
        Monomial rest;
        for (auto& [v, ee] : m.powers)
            if (v != var) rest.powers.emplace_back(v, ee);
        Polynomial t(space_);
        t.terms_[rest] = c;
        t = t * repl.pow(e);
        r += t;
    }
    return r;
}

Polynomial Polynomial::derivative(VarId var) const {
    Polynomial r(space_);
    for (auto& [m, c] : terms_) {
        uint32_t e = m.degree_in(var);
        if (e == 0) continue;
        Monomial d;
        for (auto& [v, ee] : m.powers) {
            if (v == var) {
                if (ee > 1) d.powers.emplace_back(v, ee - 1);
            } else {
                d.powers.emplace_back(v, ee);
            }
        }
        r.add_term(d, c * e);
    }
    return r;
}

std::optional<std::pair<VarId, Rational>> Polynomial::unit_linear_pivot() const {
    std::map<VarId, Rational> linear;
    std::set<VarId> blocked;
    for (auto& [m, c] : terms_) {
        if (m.powers.size() == 1 && m.powers[0].second == 1) {
            linear[m.powers[0].first] = c;
        } else {
            for (auto& [v, e] : m.powers) blocked.insert(v);
        }
    }
    for (auto& [v, c] : linear)
        if (!blocked.count(v)) return std::make_pair(v, c);
    return std::nullopt;
}

Polynomial Polynomial::divide_exact(const Polynomial& d) const {
    if (d.is_zero()) throw std::logic_error("division by zero polynomial");
    if (is_zero()) return Polynomial(space_);
    if (d.terms_.size() == 1) {
        // single-term divisor: divide each monomial
        const auto& [dm, dc] = *d.terms_.begin();
        Polynomial r(space_);
        for (auto& [m, c] : terms_) {
            Monomial q;
            auto id = dm.powers.begin();
            for (auto& [v, e] : m.powers) {
                uint32_t sub = 0;
                if (id != dm.powers.end() && id->first == v) {
                    sub = id->second;
                    ++id;
                }
                if (sub > e) throw std::logic_error("inexact monomial division");
                if (e - sub) q.powers.emplace_back(v, e - sub);
            }
            if (id != dm.powers.end()) throw std::logic_error("inexact monomial division");
            r.add_term(q, c / dc);
        }
        return r;
    }
    auto piv = d.unit_linear_pivot();
    if (!piv) throw std::logic_error("divisor lacks a unit-linear pivot");
    auto [v, c] = *piv;
    Polynomial num = *this;
    Polynomial quot(space_);
    while (true) {
        uint32_t maxe = num.degree_in(v);
        if (maxe == 0) {
            if (!num.is_zero()) throw std::logic_error("inexact polynomial division");
            break;
        }
        // terms with v^maxe, divided by c*v
        Polynomial qt(space_);
        for (auto& [m, cc] : num.terms_) {
            if (m.degree_in(v) != maxe) continue;
            Monomial q;
            for (auto& [w, e] : m.powers) {
                uint32_t ee = (w == v) ? e - 1 : e;
                if (ee) q.powers.emplace_back(w, ee);
            }
            qt.add_term(q, cc / c);
        }
        quot += qt;
        num -= qt * d;
    }
    return quot;
}

Monomial Polynomial::common_monomial() const {
    if (terms_.empty()) return Monomial::one();
    std::map<VarId, uint32_t> mins;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (first) {
            for (auto& [v, e] : m.powers) mins[v] = e;
            first = false;
            continue;
        }
        std::map<VarId, uint32_t> cur;
        for (auto& [v, e] : m.powers) cur[v] = e;
        for (auto it = mins.begin(); it != mins.end();) {
            auto f = cur.find(it->first);
            if (f == cur.end()) {
                it = mins.erase(it);
            } else {
                it->second = std::min(it->second, f->second);
                ++it;
            }
        }
    }
    Monomial m;
    for (auto& [v, e] : mins) m.powers.emplace_back(v, e);
    return m;
}

std::string default_var_name(VarSpace s, VarId v) {
    return (s == VarSpace::X ? "x" : "y") + std::to_string(v);
}

std::string Polynomial::to_string(const std::function<std::string(VarId)>& namer) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool coeff_one = (a == 1) && !m.powers.empty();
        if (!coeff_one) os << rat_str(a);
        bool star = !coeff_one;
        for (auto& [v, e] : m.powers) {
            if (star) os << "*";
            os << namer(v);
            if (e > 1) os << "^" << e;
            star = true;
        }
    }
    return os.str();
}

Polynomial parse_polynomial(std::string_view text, VarSpace space) {
    Polynomial out(space);
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
    };
    skip();
    int sign = 1;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        sign = text[i] == '-' ? -1 : 1;
        ++i;
    }
    const char expect = space == VarSpace::X ? 'x' : 'y';
    while (i < text.size()) {
        skip();
        Rational coeff(1);
        Monomial m;
        bool saw_any = false;
        bool expect_factor = true;
        while (expect_factor) {
            skip();
            if (i < text.size() && (std::isdigit((unsigned char)text[i]))) {
                size_t j = i;
                while (j < text.size() &&
                       (std::isdigit((unsigned char)text[j]) || text[j] == '/' || text[j] == '.'))
                    ++j;
                coeff *= parse_number(text.substr(i, j - i));
                i = j;
                saw_any = true;
            } else if (i < text.size() && (text[i] == expect || text[i] == 'x' || text[i] == 'y' || text[i] == 'z')) {
                ++i;
                size_t j = i;
                while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
                VarId v = (j == i) ? 0 : VarId(std::stoul(std::string(text.substr(i, j - i))));
                i = j;
                uint32_t e = 1;
                skip();
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    size_t k = i;
                    while (k < text.size() && std::isdigit((unsigned char)text[k])) ++k;
                    e = uint32_t(std::stoul(std::string(text.substr(i, k - i))));
                    i = k;
                }
                m = mono_mul(m, Monomial::var(v, e));
                saw_any = true;
            } else {
                throw ParseError("bad polynomial factor near '" + std::string(text.substr(i)) + "'");
            }
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
            } else {
                expect_factor = false;
            }
        }
        if (!saw_any) throw ParseError("empty polynomial term");
        out.add_term(m, sign * coeff);
        skip();
        if (i >= text.size()) break;
        if (text[i] == '+') {
            sign = 1;
            ++i;
        } else if (text[i] == '-') {
            sign = -1;
            ++i;
        } else {
            throw ParseError("expected '+' or '-' near '" + std::string(text.substr(i)) + "'");
        }
    }
    return out;
}

}  // namespace probenv
