#pragma once

#include <functional>

#include "probenv/poly.hpp"
#include "probenv/rational.hpp"

namespace probenv {

/// Closed interval with exact rational endpoints.
struct RatInterval {
    Rational lo, hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rational l, Rational h);
    static RatInterval point(const Rational& v) { return RatInterval(v, v); }

    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool is_point() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }

    RatInterval operator+(const RatInterval& o) const;
    RatInterval operator-(const RatInterval& o) const;
    RatInterval operator*(const RatInterval& o) const;
    RatInterval scale(const Rational& c) const;
    RatInterval pow(unsigned e) const;

    /// Outward denominator cap (default 512 bits per endpoint).
    RatInterval capped(unsigned bits = 512) const;
};

/// Sound range enclosure of p over the box (tightness not required).
RatInterval interval_eval(const Polynomial& p,
                          const std::function<RatInterval(VarId)>& box);

}  // namespace probenv
