#pragma once

#include "coloexp/lp.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace coloexp
{

enum class SolveStatus
{
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
    // Imported solution whose residuals exceed the reporting tolerance.
    VerificationFailed,
};

std::string_view to_string(SolveStatus status);

struct SolverOptions
{
    double primal_tolerance = 1e-7;   // feasibility while pivoting
    double dual_tolerance = 1e-9;     // relative to the largest |cost|
    double pivot_tolerance = 1e-9;
    double report_tolerance = 1e-6;   // residuals on the returned solution
    std::int64_t max_iterations = 2'000'000;
    int degenerate_stall_limit = 1000; // switch to Bland's rule after this many
    int refactor_interval = 64;
};

/// Result of a solve or an import.
///
/// Row duals follow d(objective)/d(rhs): a binding <= row in a minimisation
/// has a dual <= 0. Reduced costs are c_j - a_j'y.
struct Solution
{
    SolveStatus status = SolveStatus::IterationLimit;
    double objective = 0.0;
    std::vector<double> primal;
    std::vector<double> duals;
    std::vector<double> reduced_costs;
    std::int64_t iterations = 0;
    bool numerically_unstable = false;
    std::string message;

    [[nodiscard]] bool optimal() const { return status == SolveStatus::Optimal; }
    [[nodiscard]] double value(const LinearProgram& lp, std::string_view var_id) const;
    [[nodiscard]] double dual(const LinearProgram& lp, std::string_view row_id) const;
};

/// Bounded-variable revised primal simplex.
Solution solve(const LinearProgram& lp, const SolverOptions& options = {});

struct Verification
{
    double max_bound_violation = 0.0;
    double max_row_violation = 0.0;
    double max_dual_sign_violation = 0.0;
    double max_complementarity = 0.0;
    double duality_gap = 0.0;  // |primal - dual| / (1 + |primal|)
    double primal_objective = 0.0;
    double dual_objective = 0.0;

    [[nodiscard]] bool primal_feasible(double tol) const
    {
        return max_bound_violation <= tol && max_row_violation <= tol;
    }
    [[nodiscard]] bool optimal(double tol) const
    {
        return primal_feasible(tol) && max_dual_sign_violation <= tol && max_complementarity <= tol &&
               duality_gap <= tol;
    }
};

/// Recomputes feasibility, dual-sign, complementarity and duality-gap
/// residuals of (primal, duals) against the LP. Reduced costs are
/// recomputed from the duals. Complementarity on an item with dual value
/// d and slack s is |s| * |d| / max(1, |d|).
Verification verify(const LinearProgram& lp, const std::vector<double>& primal,
                    const std::vector<double>& duals);

}  // namespace coloexp
