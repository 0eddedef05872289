#include "probenv/sturm.hpp"

#include <stdexcept>

namespace probenv {

int udeg(const UPoly& u) { return int(u.size()) - 1; }

bool uis_zero(const UPoly& u) {
    for (auto& c : u)
        if (c != 0) return false;
    return true;
}

UPoly utrim(UPoly u) {
    while (!u.empty() && u.back() == 0) u.pop_back();
    return u;
}

Rational uval(const UPoly& u, const Rational& x) {
    Rational r(0);
    for (auto it = u.rbegin(); it != u.rend(); ++it) r = r * x + *it;
    return r;
}

UPoly uneg(const UPoly& u) {
    UPoly r = u;
    for (auto& c : r) c = -c;
    return r;
}

UPoly uadd(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return utrim(std::move(r));
}

UPoly usub(const UPoly& a, const UPoly& b) { return uadd(a, uneg(b)); }

UPoly umul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return utrim(std::move(r));
}

UPoly uderiv(const UPoly& u) {
    UPoly r;
    for (size_t i = 1; i < u.size(); ++i) r.push_back(u[i] * int(i));
    return utrim(std::move(r));
}

std::pair<UPoly, UPoly> udivmod(const UPoly& a, const UPoly& b) {
    UPoly rem = utrim(a);
    UPoly bb = utrim(b);
    if (bb.empty()) throw std::logic_error("univariate division by zero");
    if (rem.size() < bb.size()) return {{}, rem};
    UPoly q(rem.size() - bb.size() + 1, Rational(0));
    while (rem.size() >= bb.size() && !rem.empty()) {
        Rational f = rem.back() / bb.back();
        size_t sh = rem.size() - bb.size();
        q[sh] = f;
        for (size_t i = 0; i < bb.size(); ++i) rem[sh + i] -= f * bb[i];
        rem = utrim(std::move(rem));
    }
    return {utrim(std::move(q)), rem};
}

UPoly ugcd(UPoly a, UPoly b) {
    a = utrim(std::move(a));
    b = utrim(std::move(b));
    while (!b.empty()) {
        auto [q, r] = udivmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

UPoly usquarefree(const UPoly& u) {
    UPoly t = utrim(u);
    if (udeg(t) <= 1) return t;
    UPoly g = ugcd(t, uderiv(t));
    if (udeg(g) <= 0) return t;
    auto [q, r] = udivmod(t, g);
    if (!uis_zero(r)) throw std::logic_error("squarefree division failed");
    return q;
}

UPoly upoly_of(const Polynomial& p, VarId var) {
    UPoly u;
    for (auto& [m, c] : p.terms()) {
        uint32_t e = 0;
        for (auto& [v, ee] : m.powers) {
            if (v != var) throw std::logic_error("polynomial is not univariate in the given variable");
            e = ee;
        }
        if (u.size() <= e) u.resize(e + 1, Rational(0));
        u[e] += c;
    }
    return utrim(std::move(u));
}

Polynomial upoly_to(const UPoly& u, VarId var, VarSpace space) {
    Polynomial p(space);
    for (size_t e = 0; e < u.size(); ++e) {
        if (u[e] == 0) continue;
        p.add_term(e == 0 ? Monomial::one() : Monomial::var(var, uint32_t(e)), u[e]);
    }
    return p;
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
    UPoly p0 = utrim(p);
    if (p0.empty()) throw std::invalid_argument("Sturm sequence of the zero polynomial");
    if (p0.back() < 0) p0 = uneg(p0);
    std::vector<UPoly> chain{p0};
    if (udeg(p0) == 0) return chain;
    chain.push_back(uderiv(p0));
    while (udeg(chain.back()) > 0) {
        auto [q, r] = udivmod(chain[chain.size() - 2], chain.back());
        if (uis_zero(r)) break;
        chain.push_back(uneg(r));
    }
    return chain;
}

int sign_variations(const std::vector<UPoly>& chain, const Rational& x) {
    int var = 0, prev = 0;
    for (auto& u : chain) {
        Rational v = uval(u, x);
        int s = sgn(v);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

RootCount count_roots_detail(const UPoly& p, const RatInterval& iv) {
    RootCount rc;
    UPoly u = usquarefree(p);
    if (uis_zero(u)) throw std::invalid_argument("count_roots of the zero polynomial");
    // deflate exact endpoint roots (recorded; roots at endpoints count, the
    // Sturm tally below is for the open interior of the deflated polynomial)
    for (const Rational& end : {iv.lo, iv.hi}) {
        while (udeg(u) > 0 && uval(u, end) == 0) {
            auto [q, r] = udivmod(u, UPoly{-end, Rational(1)});
            if (!uis_zero(r)) throw std::logic_error("deflation failed");
            u = q;
            ++rc.endpoint_deflations;
            ++rc.count;
            if (iv.is_point()) break;
        }
        if (iv.is_point()) break;
    }
    rc.squarefree = u;
    if (udeg(u) > 0 && !iv.is_point()) {
        auto chain = sturm_sequence(u);
        rc.variations_lo = sign_variations(chain, iv.lo);
        rc.variations_hi = sign_variations(chain, iv.hi);
        rc.count += rc.variations_lo - rc.variations_hi;
    }
    return rc;
}

int count_roots(const UPoly& p, const RatInterval& iv) {
    return count_roots_detail(p, iv).count;
}

static void isolate_rec(const UPoly& u, const std::vector<UPoly>& chain, const Rational& lo,
                        const Rational& hi, const Rational& tol,
                        std::vector<RatInterval>& out) {
    int n = sign_variations(chain, lo) - sign_variations(chain, hi);
    if (n == 0) return;
    if (n == 1 && hi - lo <= tol) {
        out.emplace_back(lo, hi);
        return;
    }
    Rational mid = (lo + hi) / 2;
    if (uval(u, mid) == 0) {
        out.push_back(RatInterval::point(mid));
        // remove the midpoint root and recurse on both sides
        auto [q, r] = udivmod(u, UPoly{-mid, Rational(1)});
        auto ch2 = udeg(q) > 0 ? sturm_sequence(q) : std::vector<UPoly>{};
        if (udeg(q) > 0) {
            isolate_rec(q, ch2, lo, mid, tol, out);
            isolate_rec(q, ch2, mid, hi, tol, out);
        }
        return;
    }
    isolate_rec(u, chain, lo, mid, tol, out);
    isolate_rec(u, chain, mid, hi, tol, out);
}

std::vector<RatInterval> isolate_roots(const UPoly& p, const RatInterval& iv,
                                       const Rational& tol) {
    std::vector<RatInterval> out;
    UPoly u = usquarefree(p);
    if (uis_zero(u)) throw std::invalid_argument("isolate_roots of the zero polynomial");
    for (const Rational& end : {iv.lo, iv.hi}) {
        if (udeg(u) > 0 && uval(u, end) == 0) {
            out.push_back(RatInterval::point(end));
            auto [q, r] = udivmod(u, UPoly{-end, Rational(1)});
            u = q;
        }
        if (iv.is_point()) break;
    }
    if (udeg(u) > 0 && !iv.is_point()) {
        auto chain = sturm_sequence(u);
        isolate_rec(u, chain, iv.lo, iv.hi, tol, out);
    }
    std::sort(out.begin(), out.end(),
              [](const RatInterval& a, const RatInterval& b) { return a.lo < b.lo; });
    return out;
}

RatInterval refine_root(const UPoly& p, RatInterval iv, const Rational& tol) {
    UPoly u = usquarefree(p);
    if (iv.is_point()) return iv;
    auto chain = sturm_sequence(u);
    auto count_in = [&](const Rational& a, const Rational& b) {
        return sign_variations(chain, a) - sign_variations(chain, b);
    };
    while (iv.width() > tol) {
        Rational mid = iv.mid();
        if (uval(u, mid) == 0) return RatInterval::point(mid);
        if (count_in(iv.lo, mid) >= 1) {
            iv.hi = mid;
        } else {
            iv.lo = mid;
        }
    }
    return iv;
}

int sign_at_root(const UPoly& q, const UPoly& defining, const RatInterval& iv) {
    UPoly qq = utrim(q);
    if (uis_zero(qq)) return 0;
    if (iv.is_point()) return sgn(uval(qq, iv.lo));
    UPoly u = usquarefree(defining);
    UPoly g = ugcd(u, qq);
    if (udeg(g) > 0 && count_roots(g, iv) >= 1) return 0;
    // q does not vanish at the root: refine until the enclosure is q-root-free
    RatInterval cur = iv;
    auto chain_u = sturm_sequence(u);
    UPoly qsf = usquarefree(qq);
    auto chain_q = sturm_sequence(qsf);
    while (true) {
        int slo = sgn(uval(qq, cur.lo)), shi = sgn(uval(qq, cur.hi));
        if (slo != 0 && slo == shi) {
            int inside = sign_variations(chain_q, cur.lo) - sign_variations(chain_q, cur.hi);
            if (inside == 0) return slo;
        }
        Rational mid = cur.mid();
        if (uval(u, mid) == 0) return sgn(uval(qq, mid));
        if (sign_variations(chain_u, cur.lo) - sign_variations(chain_u, mid) >= 1) {
            cur.hi = mid;
        } else {
            cur.lo = mid;
        }
    }
}

}  // namespace probenv
