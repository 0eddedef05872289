#pragma once

#include <map>
#include <string>
#include <vector>

#include "probenv/events.hpp"
#include "probenv/poly.hpp"
#include "probenv/rational.hpp"

namespace probenv {

enum class Relation : uint8_t { EqZero, GeqZero, GtZero, NeqZero };

std::string relation_str(Relation r);

/// Normalizes "lhs relop rhs" into "poly (rel) 0".
std::pair<Polynomial, Relation> normalize_relation(const Polynomial& lhs,
                                                   const std::string& relop,
                                                   const Polynomial& rhs);

struct Provenance {
    int line = 0;
    std::string kind;  // sugar kind: probability, conditional, independence, ...
};

struct Constraint {
    Polynomial poly;  // over x-variables
    Relation rel = Relation::EqZero;
    Provenance prov;
};

/// One x-variable per distinct boolean combination, canonicalized by atom set.
class ProbTermRegistry {
public:
    VarId term(const AtomSet& atoms, const std::string& label = {});
    const AtomSet& atoms(VarId v) const { return forms_.at(v); }
    const std::string& label(VarId v) const { return labels_.at(v); }
    size_t size() const { return forms_.size(); }

private:
    std::map<AtomSet, VarId> index_;
    std::vector<AtomSet> forms_;
    std::vector<std::string> labels_;
};

/// Sugar-level statements, kept for parse/print round-tripping.
struct Statement {
    enum class Kind { Prob, Conditional, Independent, IndepAlgebras, PolyConstraint };
    Kind kind;
    std::vector<BooleanExpr> exprs;      // Prob: 1; Conditional: target, given; Independent: m
    std::vector<uint32_t> left, right;   // IndepAlgebras event indices
    std::string relop;                   // Prob / PolyConstraint
    Rational constant;                   // Prob / Conditional
    std::string lhs_text, rhs_text;      // PolyConstraint raw (canonical) sides
    int line = 0;
};

struct RequirementSet {
    int n = 0;
    std::vector<EventId> events;
    ProbTermRegistry terms;
    std::vector<Statement> statements;
    std::vector<Constraint> constraints;
    std::vector<std::string> warnings;

    VarId term_of(const BooleanExpr& e);
};

struct SpecError : std::runtime_error {
    int line, column;
    SpecError(int l, int c, const std::string& msg)
        : std::runtime_error("line " + std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
          line(l),
          column(c) {}
};

/// Parses the line-oriented requirement DSL ("#" comments) and desugars every
/// statement into x-space constraints, x-variables numbered in first-appearance
/// order.
RequirementSet parse_spec(const std::string& text);

/// Canonical printer; parse_spec(print_spec(rs)) reproduces the structure.
std::string print_spec(const RequirementSet& rs);

/// Textual substitution of "$name" placeholders, applied before parsing.
std::string substitute_params(const std::string& text,
                              const std::map<std::string, std::string>& params);

// Desugaring primitives (also used directly by tests).
Constraint desugar_probability(RequirementSet& rs, const BooleanExpr& e, const Rational& c,
                               int line = 0);
std::vector<Constraint> desugar_conditional(RequirementSet& rs, const BooleanExpr& target,
                                            const BooleanExpr& given, const Rational& c,
                                            int line = 0);
std::vector<Constraint> desugar_independence(RequirementSet& rs,
                                             const std::vector<BooleanExpr>& exprs,
                                             bool collective, int line = 0);
std::vector<Constraint> desugar_conditional_independence(RequirementSet& rs,
                                                         const BooleanExpr& a1,
                                                         const BooleanExpr& a2,
                                                         const BooleanExpr& a3, int line = 0);
std::vector<Constraint> desugar_algebra_independence(RequirementSet& rs,
                                                     const std::vector<uint32_t>& left,
                                                     const std::vector<uint32_t>& right,
                                                     int line = 0);

}  // namespace probenv
