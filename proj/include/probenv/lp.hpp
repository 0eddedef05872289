#pragma once

#include <map>
#include <optional>
#include <vector>

#include "probenv/poly.hpp"
#include "probenv/rational.hpp"

namespace probenv {

/// Linear row "sum coeffs*x + constant (=|>=) 0" with the index of the
/// system row it came from.
struct LinRow {
    std::vector<std::pair<VarId, Rational>> coeffs;  // ascending VarId
    Rational constant;
    bool equality = true;
    size_t origin = 0;
};

/// Sign-constrained combination: sum lambda_r * row_r == target < 0,
/// lambda free on equality rows, >= 0 on inequality rows.
struct LpFarkas {
    std::vector<std::pair<size_t, Rational>> lambda;  // by origin index
    Rational target;
};

struct LpResult {
    bool feasible = false;
    std::map<VarId, Rational> point;
    std::optional<LpFarkas> farkas;
};

/// Exact rational simplex (Bland's rule), phase 1 only.
LpResult lp_feasibility(const std::vector<LinRow>& rows);

struct LpOpt {
    enum class Status { Infeasible, Optimal, Unbounded };
    Status status = Status::Infeasible;
    Rational value;
    std::map<VarId, Rational> point;
    std::optional<LpFarkas> farkas;  // when infeasible
};

/// Exact two-phase simplex optimizing a linear objective over the rows.
LpOpt lp_optimize(const std::vector<LinRow>& rows,
                  const std::vector<std::pair<VarId, Rational>>& objective, bool maximize);

}  // namespace probenv
