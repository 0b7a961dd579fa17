#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "combnet/bounds.hpp"
#include "combnet/exactmath.hpp"

namespace combnet {

struct LpVariable {
    std::string name;
    bool nonneg = true;
};

struct LpRow {
    std::vector<std::pair<int, Rational>> coeffs;
    Sense sense = Sense::GE;
    Rational rhs = 0;
    std::string provenance;
};

/// minimize objective . z  subject to rows, nonnegativity of flagged variables.
struct LinearProgram {
    std::vector<LpVariable> vars;
    std::vector<Rational> objective;
    std::vector<LpRow> rows;

    int add_var(std::string name, bool nonneg = true);
    int index_of(const std::string& name) const;
    void add_row(LpRow row) { rows.push_back(std::move(row)); }
};

/// Bound LP: variables R, x_W for every W subset of [K] (named by sorted 1-based ids), and the
/// system's y_Q; the system rows plus sum x_W = 1 and per-user memory rows sum_{W ni i} x_W <= M/N.
LinearProgram build_bound_lp(const BoundSystem& sys, int N, const Rational& M);

enum class LpStatus { Optimal, Infeasible, Unbounded };
const char* status_str(LpStatus s);

struct LpOptions {
    /// Consecutive non-improving pivots tolerated under largest-coefficient pricing before
    /// switching to Bland's rule.
    std::size_t stallLimit = 50;
    bool presolve = true;
};

struct LpResult {
    LpStatus status = LpStatus::Optimal;
    Rational optimum = 0;
    /// Optimal vertex (Optimal) or a direction z with improving objective (Unbounded).
    std::vector<Rational> primal;
    /// One multiplier per original row; certifies optimality (Optimal) or infeasibility (Infeasible).
    std::vector<Rational> dual;
    std::size_t pivots = 0;
    std::size_t rowsUsed = 0;
    bool blandUsed = false;

    std::string to_json(const LinearProgram& lp) const;
};

LpResult solve_lp(const LinearProgram& lp, const LpOptions& opt = {});

struct FeasibilityReport {
    bool feasible = true;
    /// First violated rows (at most 10), as indices into lp.rows.
    std::vector<std::size_t> violated;
    std::vector<std::string> provenance;
};

FeasibilityReport check_feasible(const LinearProgram& lp, const std::vector<Rational>& assignment);

/// Verifies that `dual` proves `optimum` is a lower bound: sign pattern, dual feasibility, and
/// sum dual_r * rhs_r == optimum.
bool check_dual_certificate(const LinearProgram& lp, const std::vector<Rational>& dual, const Rational& optimum);

/// Convenience: build and solve the bound LP, returning the optimum.
LpResult solve_bound(const BoundSystem& sys, int N, const Rational& M, const LpOptions& opt = {});

} // namespace combnet
