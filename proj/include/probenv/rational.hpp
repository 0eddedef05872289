#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace probenv {

// Exact rational arithmetic throughout; no binary floating point anywhere.
using Rational = mpq_class;
using Integer = mpz_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses an integer, a fraction "p/q", or a finite decimal into an exact rational.
Rational parse_number(std::string_view text);

/// Canonical "p/q" (or "p" when q == 1) rendering.
std::string rat_str(const Rational& r);

Rational rat_pow(const Rational& base, unsigned exp);

inline int rat_sign(const Rational& r) { return sgn(r); }

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// Rounds r down (floor) or up (ceil) to a rational with denominator 2^bits,
/// used to cap denominator growth in interval endpoints. Identity when the
/// denominator already fits.
Rational round_down_bits(const Rational& r, unsigned bits);
Rational round_up_bits(const Rational& r, unsigned bits);

}  // namespace probenv
