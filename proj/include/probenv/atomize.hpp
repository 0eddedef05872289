#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "probenv/interval.hpp"
#include "probenv/poly.hpp"
#include "probenv/requirements.hpp"
#include "probenv/sturm.hpp"

namespace probenv {

/// One product of already-atomized factors, kept unexpanded when the
/// expansion would be large (the five-event system's degree-5 rows
/// would explode to ~10^6 monomials).
struct FactoredProduct {
    Rational coeff;
    std::vector<Polynomial> factors;
};

/// A PolySystem row: head + sum of factored products, with a relation.
struct PolyRow {
    Polynomial head{VarSpace::Y};
    std::vector<FactoredProduct> prods;
    Relation rel = Relation::EqZero;
    int origin = -1;  // constraint index, -1 for normalization/nonnegativity
    std::string tag;

    bool is_expanded() const { return prods.empty(); }
    bool is_constant() const;
    Rational constant_value() const;
    unsigned total_degree() const;
    std::set<VarId> vars() const;
    size_t expanded_term_estimate() const;

    PolyRow subst(VarId var, const Polynomial& repl) const;
    Polynomial expanded() const;  // term-guard protected
    /// Expand in place when the estimate is small.
    void maybe_expand(size_t limit);

    Rational eval(const std::function<Rational(VarId)>& point) const;
    RatInterval interval(const std::function<RatInterval(VarId)>& box) const;
    /// Compose with a univariate parametrization var -> u(z).
    UPoly compose(const std::function<const UPoly&(VarId)>& param) const;
};

struct PolySystem {
    int n = 0;
    std::vector<PolyRow> rows;
    size_t normalization_row = 0;
    size_t nonneg_begin = 0;  // rows [nonneg_begin, nonneg_begin + 2^n) are y_a >= 0
    std::vector<AtomSet> xforms;         // x-variable -> atom set
    std::vector<std::string> xlabels;    // printable P(...) labels
    std::vector<Constraint> xconstraints;  // the desugared x-space rows
    std::vector<std::string> event_names;
    uint64_t digest = 0;

    size_t atom_count() const { return size_t(1) << n; }
    std::string row_str(size_t i) const;
};

/// The Lemma's change of variables: x_j := sum of y_alpha over atoms_of(B_j),
/// normalization and nonnegativity appended as explicit addressable rows.
PolySystem atomize(const RequirementSet& rs);

/// Stable textual rendering (one constraint per line, graded-lex term order);
/// the `atoms` subcommand prints exactly this.
std::string print_system(const PolySystem& sys);

struct Witness {
    bool interval_kind = false;

    // exact kind
    std::vector<Rational> y;

    // interval-certified kind: y_alpha = y_of_z[alpha](z) at the unique root of
    // `defining` inside `isolating`; `count_in_range` is the Sturm count of
    // `defining` over `feasible_range`.
    UPoly defining;
    RatInterval isolating;
    std::vector<UPoly> y_of_z;
    RatInterval feasible_range{Rational(0), Rational(1)};
    int count_in_range = 0;
};

struct Violation {
    size_t constraint_index;
    std::string description;
    Rational residual;
};

struct WitnessReport {
    bool ok = false;
    std::vector<Violation> violations;
};

/// P(e) under an exact witness: the sum of atom masses over atoms_of(e).
Rational x_of_witness(const Witness& w, const BooleanExpr& e, const RequirementSet& rs);

/// Exact check of every desugared constraint (and the witness invariants)
/// at x(w); interval-certified witnesses are checked through the univariate
/// parametrization (gcd for equalities, sign determination for inequalities).
WitnessReport verify_witness(const Witness& w, const RequirementSet& rs);
WitnessReport verify_witness_system(const Witness& w, const PolySystem& sys);

}  // namespace probenv
