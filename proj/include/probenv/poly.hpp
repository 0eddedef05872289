#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "probenv/rational.hpp"

namespace probenv {

using VarId = uint32_t;

/// Variable universe tag: x-space (one variable per boolean combination)
/// or y-space (one variable per atom).
enum class VarSpace : uint8_t { X, Y };

/// Sparse exponent vector; no zero exponents stored, vars are ascending.
struct Monomial {
    std::vector<std::pair<VarId, uint32_t>> powers;

    unsigned total_degree() const {
        unsigned d = 0;
        for (auto& [v, e] : powers) d += e;
        return d;
    }
    uint32_t degree_in(VarId v) const {
        for (auto& [w, e] : powers)
            if (w == v) return e;
        return 0;
    }
    bool operator==(const Monomial& o) const { return powers == o.powers; }
    static Monomial one() { return {}; }
    static Monomial var(VarId v, uint32_t e = 1) { return Monomial{{{v, e}}}; }
};

Monomial mono_mul(const Monomial& a, const Monomial& b);

/// Graded lexicographic: higher total degree first; ties broken lexicographically
/// on the exponent vector read from the lowest variable index.
struct GradedLex {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

struct TermGuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GradedLex>;

    Polynomial() = default;
    explicit Polynomial(VarSpace s) : space_(s) {}
    static Polynomial constant(Rational c, VarSpace s);
    static Polynomial variable(VarId v, VarSpace s);

    VarSpace space() const { return space_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // 0 for the zero polynomial
    unsigned total_degree() const;
    uint32_t degree_in(VarId v) const;
    std::set<VarId> vars() const;
    size_t term_count() const { return terms_.size(); }

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial scale(const Rational& c) const;
    Polynomial pow(unsigned e) const;

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

    bool operator==(const Polynomial& o) const {
        return space_ == o.space_ && terms_ == o.terms_;
    }

    void add_term(const Monomial& m, const Rational& c);

    Rational eval(const std::function<Rational(VarId)>& point) const;

    /// Substitute var := repl everywhere; repl must share the universe.
    Polynomial subst(VarId var, const Polynomial& repl) const;

    Polynomial derivative(VarId var) const;

    /// Coefficient of v collected across terms, as a polynomial in the
    /// remaining variables, together with the degree-in-v profile.
    /// unit_linear_pivot: lowest variable occurring only linearly with a
    /// constant (rational) coefficient; the pivot of unit-linear elimination.
    std::optional<std::pair<VarId, Rational>> unit_linear_pivot() const;

    /// Exact division by d; throws if d does not divide exactly.
    /// d must have a unit-linear pivot variable (the forms produced by
    /// elimination and factor extraction always do) or be a single term.
    Polynomial divide_exact(const Polynomial& d) const;

    /// Largest monomial m and content c with *this == c * m * primitive-ish rest;
    /// c is the coefficient of the leading term, m the per-variable min exponents.
    Monomial common_monomial() const;

    std::string to_string(const std::function<std::string(VarId)>& namer) const;

    /// Term guard for explicit expansions (spec: abort rather than thrash).
    static constexpr size_t kTermGuard = 10'000'000;

private:
    VarSpace space_ = VarSpace::Y;
    TermMap terms_;
};

/// Default variable names: x<i> in x-space, y<i> in y-space.
std::string default_var_name(VarSpace s, VarId v);

/// Parses a polynomial in the syntax emitted by to_string with default names:
/// terms like "3/4*y0^2*y3", "-y1", "7". Used by the certificate file reader.
Polynomial parse_polynomial(std::string_view text, VarSpace space);

}  // namespace probenv
