#include "probenv/lp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace probenv {

namespace {

// Dense exact simplex. Free variables are split x = x+ - x-, inequality rows
// get slacks, phase 1 minimizes artificials; Bland's rule throughout makes
// every run deterministic and finite.
class Simplex {
public:
    explicit Simplex(const std::vector<LinRow>& rows) : rows_(rows) {
        std::set<VarId> vs;
        for (auto& r : rows) {
            for (auto& [v, c] : r.coeffs) vs.insert(v);
        }
        vars_.assign(vs.begin(), vs.end());
        nstruct_ = 2 * vars_.size();
        nslack_ = 0;
        for (auto& r : rows)
            if (!r.equality) ++nslack_;
        m_ = rows.size();
        ncols_ = nstruct_ + nslack_;
        T_.assign(m_, std::vector<Rational>(ncols_ + m_, Rational(0)));
        b_.assign(m_, Rational(0));
        sign_.assign(m_, 1);
        size_t slack = 0;
        for (size_t i = 0; i < m_; ++i) {
            for (auto& [v, c] : rows[i].coeffs) {
                size_t j = col_of(v);
                T_[i][j] = c;
                T_[i][j + 1] = -c;
            }
            if (!rows[i].equality) {
                slack_col_of_row_[i] = nstruct_ + slack;
                T_[i][nstruct_ + slack] = Rational(-1);
                ++slack;
            }
            b_[i] = -rows[i].constant;
            if (b_[i] < 0) {
                for (auto& x : T_[i]) x = -x;
                b_[i] = -b_[i];
                sign_[i] = -1;
            }
            T_[i][ncols_ + i] = Rational(1);  // artificial
        }
        b0_ = b_;
        basis_.resize(m_);
        for (size_t i = 0; i < m_; ++i) basis_[i] = ncols_ + i;
    }

    // returns true when feasible; otherwise farkas() is available
    bool phase1() {
        // objective: minimize sum of artificials; maintain the reduced-cost row
        // with basic columns eliminated: z_j = y^T A_j - c_j.
        z_.assign(ncols_ + m_, Rational(0));
        zval_ = Rational(0);
        for (size_t i = 0; i < m_; ++i) {
            for (size_t j = 0; j < ncols_; ++j) z_[j] += T_[i][j];
            zval_ += b_[i];
        }
        iterate(/*allow_cols=*/ncols_);
        if (zval_ != 0) return false;
        drive_out_artificials();
        return true;
    }

    LpFarkas farkas() const {
        // y_i = z_[artificial_i] + 1 in flipped space (reduced cost of the
        // artificial column is y_i - c_i with c_i = 1)
        LpFarkas f;
        Rational target(0);
        std::vector<Rational> y(m_);
        for (size_t i = 0; i < m_; ++i) {
            y[i] = z_[ncols_ + i] + 1;
            Rational lam = y[i] * sign_[i];
            if (lam != 0) f.lambda.emplace_back(rows_[i].origin, lam);
            target -= y[i] * b_[i] * 1;  // combination value = -y^T b (flipped space)
        }
        f.target = target;
        // exact self-check: the combination must be the constant `target` < 0
        // with nonnegative multipliers on inequality rows
        std::map<VarId, Rational> acc;
        Rational cst(0);
        for (size_t i = 0; i < m_; ++i) {
            Rational lam = y[i] * sign_[i];
            if (!rows_[i].equality && lam < 0)
                throw std::logic_error("farkas extraction produced a negative inequality multiplier");
            for (auto& [v, c] : rows_[i].coeffs) acc[v] += lam * c;
            cst += lam * rows_[i].constant;
        }
        for (auto& [v, c] : acc)
            if (c != 0) throw std::logic_error("farkas combination is not constant");
        if (cst >= 0) throw std::logic_error("farkas combination is not negative");
        if (cst != target) throw std::logic_error("farkas target mismatch");
        return f;
    }

    std::map<VarId, Rational> point() const {
        std::map<VarId, Rational> out;
        std::vector<Rational> x(ncols_ + m_, Rational(0));
        for (size_t i = 0; i < m_; ++i) x[basis_[i]] = b_[i];
        for (size_t k = 0; k < vars_.size(); ++k) {
            Rational v = x[2 * k] - x[2 * k + 1];
            if (v != 0) out[vars_[k]] = v;
            else out[vars_[k]] = Rational(0);
        }
        return out;
    }

    // phase 2: optimize objective over structural variables (minimization)
    LpOpt::Status phase2(const std::vector<std::pair<VarId, Rational>>& objective,
                         bool maximize) {
        z_.assign(ncols_ + m_, Rational(0));
        zval_ = 0;
        // cost vector over split columns; minimize c^T x (negate for maximize)
        for (auto& [v, c] : objective) {
            auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
            if (it == vars_.end() || *it != v) continue;  // variable absent: coefficient on nothing
            size_t k = size_t(it - vars_.begin());
            Rational cc = maximize ? -c : c;
            z_[2 * k] -= cc;   // z_j = -c_j initially
            z_[2 * k + 1] += cc;
        }
        // eliminate basic columns from the cost row
        for (size_t i = 0; i < m_; ++i) {
            if (z_[basis_[i]] != 0) {
                Rational f = z_[basis_[i]];
                for (size_t j = 0; j < ncols_ + m_; ++j) z_[j] -= f * T_[i][j];
                zval_ -= f * b_[i];
            }
        }
        return iterate(ncols_) ? LpOpt::Status::Optimal : LpOpt::Status::Unbounded;
    }

    Rational objective_value(const std::vector<std::pair<VarId, Rational>>& objective) const {
        auto p = point();
        Rational v(0);
        for (auto& [var, c] : objective) {
            auto it = p.find(var);
            if (it != p.end()) v += c * it->second;
        }
        return v;
    }

private:
    size_t col_of(VarId v) const {
        auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
        return 2 * size_t(it - vars_.begin());
    }

    // Bland pivoting on columns [0, limit); returns false on unboundedness.
    bool iterate(size_t limit) {
        for (;;) {
            size_t piv = SIZE_MAX;
            for (size_t j = 0; j < limit; ++j) {
                if (z_[j] > 0) {
                    piv = j;
                    break;
                }
            }
            if (piv == SIZE_MAX) return true;
            size_t prow = SIZE_MAX;
            Rational best;
            for (size_t i = 0; i < m_; ++i) {
                if (T_[i][piv] > 0) {
                    Rational ratio = b_[i] / T_[i][piv];
                    if (prow == SIZE_MAX || ratio < best ||
                        (ratio == best && basis_[i] < basis_[prow])) {
                        best = ratio;
                        prow = i;
                    }
                }
            }
            if (prow == SIZE_MAX) return false;  // unbounded
            pivot(prow, piv);
        }
    }

    void pivot(size_t pr, size_t pc) {
        Rational p = T_[pr][pc];
        for (auto& x : T_[pr]) x /= p;
        b_[pr] /= p;
        for (size_t i = 0; i < m_; ++i) {
            if (i == pr || T_[i][pc] == 0) continue;
            Rational f = T_[i][pc];
            for (size_t j = 0; j < ncols_ + m_; ++j) T_[i][j] -= f * T_[pr][j];
            b_[i] -= f * b_[pr];
        }
        if (z_[pc] != 0) {
            Rational f = z_[pc];
            for (size_t j = 0; j < ncols_ + m_; ++j) z_[j] -= f * T_[pr][j];
            zval_ -= f * b_[pr];
        }
        basis_[pr] = pc;
    }

    void drive_out_artificials() {
        for (size_t i = 0; i < m_; ++i) {
            if (basis_[i] < ncols_) continue;
            size_t col = SIZE_MAX;
            for (size_t j = 0; j < ncols_; ++j) {
                if (T_[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col != SIZE_MAX) pivot(i, col);
            // else: redundant row; the artificial stays basic at level 0
        }
    }

    const std::vector<LinRow>& rows_;
    std::vector<VarId> vars_;
    std::map<size_t, size_t> slack_col_of_row_;
    size_t nstruct_ = 0, nslack_ = 0, m_ = 0, ncols_ = 0;
    std::vector<std::vector<Rational>> T_;
    std::vector<Rational> b_;
    std::vector<int> sign_;
    std::vector<size_t> basis_;
    std::vector<Rational> z_;
    Rational zval_;
};

}  // namespace

LpResult lp_feasibility(const std::vector<LinRow>& rows) {
    LpResult out;
    Simplex s(rows);
    if (s.phase1()) {
        out.feasible = true;
        out.point = s.point();
    } else {
        out.feasible = false;
        out.farkas = s.farkas();
    }
    return out;
}

LpOpt lp_optimize(const std::vector<LinRow>& rows,
                  const std::vector<std::pair<VarId, Rational>>& objective, bool maximize) {
    LpOpt out;
    Simplex s(rows);
    if (!s.phase1()) {
        out.status = LpOpt::Status::Infeasible;
        out.farkas = s.farkas();
        return out;
    }
    out.status = s.phase2(objective, maximize);
    if (out.status == LpOpt::Status::Optimal) {
        out.point = s.point();
        out.value = 0;
        for (auto& [v, c] : objective) {
            auto it = out.point.find(v);
            if (it != out.point.end()) out.value += c * it->second;
        }
    }
    return out;
}

}  // namespace probenv
