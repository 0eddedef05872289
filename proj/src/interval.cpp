#include "probenv/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace probenv {

RatInterval::RatInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("interval lo > hi");
}

RatInterval RatInterval::operator+(const RatInterval& o) const {
    return RatInterval(lo + o.lo, hi + o.hi);
}

RatInterval RatInterval::operator-(const RatInterval& o) const {
    return RatInterval(lo - o.hi, hi - o.lo);
}

RatInterval RatInterval::operator*(const RatInterval& o) const {
    Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return RatInterval(std::min(std::min(a, b), std::min(c, d)),
                       std::max(std::max(a, b), std::max(c, d)));
}

RatInterval RatInterval::scale(const Rational& c) const {
    if (c >= 0) return RatInterval(lo * c, hi * c);
    return RatInterval(hi * c, lo * c);
}

RatInterval RatInterval::pow(unsigned e) const {
    if (e == 0) return point(1);
    RatInterval acc = *this;
    for (unsigned k = 1; k < e; ++k) {
        // even powers of sign-straddling intervals stay nonnegative
        RatInterval next = acc * *this;
        if ((k + 1) % 2 == 0 && contains_zero() && next.lo < 0) next.lo = 0;
        acc = next;
    }
    return acc;
}

RatInterval RatInterval::capped(unsigned bits) const {
    return RatInterval(round_down_bits(lo, bits), round_up_bits(hi, bits));
}

RatInterval interval_eval(const Polynomial& p,
                          const std::function<RatInterval(VarId)>& box) {
    RatInterval total = RatInterval::point(0);
    for (auto& [m, c] : p.terms()) {
        RatInterval t = RatInterval::point(1);
        for (auto& [v, e] : m.powers) t = t * box(v).pow(e);
        total = total + t.scale(c);
    }
    return total.capped();
}

}  // namespace probenv
