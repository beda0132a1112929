#include "coloexp/simplex.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coloexp
{

std::string_view to_string(SolveStatus status)
{
    switch (status)
    {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::IterationLimit: return "iteration_limit";
    case SolveStatus::VerificationFailed: return "verification_failed";
    }
    return "unknown";
}

double Solution::value(const LinearProgram& lp, std::string_view var_id) const
{
    auto col = lp.find_variable(var_id);
    if (!col)
        throw std::out_of_range("unknown variable " + std::string(var_id));
    return primal.at(col->index);
}

double Solution::dual(const LinearProgram& lp, std::string_view row_id) const
{
    auto row = lp.find_row(row_id);
    if (!row)
        throw std::out_of_range("unknown row " + std::string(row_id));
    return duals.at(row->index);
}

namespace
{

enum class NonbasicAt : std::uint8_t { Lower, Upper, Zero, Basic };

struct SparseColumn
{
    std::vector<std::size_t> rows;
    std::vector<double> values;
};

// Working state of one solve. Columns 0..n-1 are structural, n..n+m-1 are
// row logicals r_i with A x - r = 0 and the row bounds placed on r_i.
class RevisedSimplex
{
public:
    RevisedSimplex(const LinearProgram& lp, const SolverOptions& options)
        : lp_(lp), opt_(options), n_(lp.num_variables()), m_(lp.num_rows())
    {
        columns_.resize(n_);
        for (std::size_t i = 0; i < m_; ++i)
        {
            for (const Term& t : lp.rows()[i].terms)
            {
                columns_[t.col.index].rows.push_back(i);
                columns_[t.col.index].values.push_back(t.coef);
            }
        }
        lower_.resize(n_ + m_);
        upper_.resize(n_ + m_);
        cost_.assign(n_ + m_, 0.0);
        for (std::size_t j = 0; j < n_; ++j)
        {
            const Variable& v = lp.variables()[j];
            lower_[j] = v.lower;
            upper_[j] = v.upper;
            cost_[j] = v.cost;
        }
        for (std::size_t i = 0; i < m_; ++i)
        {
            const Row& r = lp.rows()[i];
            lower_[n_ + i] = r.sense == RowSense::Le ? -kInfinity : r.rhs;
            upper_[n_ + i] = r.sense == RowSense::Ge ? kInfinity : r.rhs;
        }
        double cmax = 1.0;
        for (double c : cost_)
            cmax = std::max(cmax, std::abs(c));
        cost_scale_ = cmax;
    }

    Solution run()
    {
        Solution sol;
        initialise();
        SolveStatus status = iterate(sol.iterations);
        sol.status = status;
        finish(sol);
        return sol;
    }

private:
    const LinearProgram& lp_;
    SolverOptions opt_;
    std::size_t n_;
    std::size_t m_;
    std::vector<SparseColumn> columns_;
    std::vector<double> lower_, upper_, cost_;
    double cost_scale_ = 1.0;

    std::vector<double> x_;
    std::vector<NonbasicAt> state_;
    std::vector<std::size_t> head_;  // basis position -> column
    std::vector<std::ptrdiff_t> position_;
    Eigen::MatrixXd binv_;
    int since_refactor_ = 0;

    // a_j'v for any column
    double column_dot(std::size_t j, const Eigen::VectorXd& v) const
    {
        if (j >= n_)
            return -v[static_cast<Eigen::Index>(j - n_)];
        const SparseColumn& c = columns_[j];
        double s = 0.0;
        for (std::size_t k = 0; k < c.rows.size(); ++k)
            s += c.values[k] * v[static_cast<Eigen::Index>(c.rows[k])];
        return s;
    }

    Eigen::VectorXd ftran(std::size_t j) const
    {
        if (j >= n_)
            return -binv_.col(static_cast<Eigen::Index>(j - n_));
        Eigen::VectorXd a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m_));
        const SparseColumn& c = columns_[j];
        for (std::size_t k = 0; k < c.rows.size(); ++k)
            a.noalias() += c.values[k] * binv_.col(static_cast<Eigen::Index>(c.rows[k]));
        return a;
    }

    void initialise()
    {
        x_.assign(n_ + m_, 0.0);
        state_.assign(n_ + m_, NonbasicAt::Zero);
        position_.assign(n_ + m_, -1);
        head_.resize(m_);
        for (std::size_t j = 0; j < n_; ++j)
            place_at_bound(j);
        for (std::size_t i = 0; i < m_; ++i)
        {
            head_[i] = n_ + i;
            position_[n_ + i] = static_cast<std::ptrdiff_t>(i);
            state_[n_ + i] = NonbasicAt::Basic;
        }
        refactor();
    }

    void place_at_bound(std::size_t j)
    {
        if (std::isfinite(lower_[j]))
        {
            state_[j] = NonbasicAt::Lower;
            x_[j] = lower_[j];
        }
        else if (std::isfinite(upper_[j]))
        {
            state_[j] = NonbasicAt::Upper;
            x_[j] = upper_[j];
        }
        else
        {
            state_[j] = NonbasicAt::Zero;
            x_[j] = 0.0;
        }
    }

    Eigen::SparseMatrix<double> basis_matrix() const
    {
        const auto m = static_cast<Eigen::Index>(m_);
        std::vector<Eigen::Triplet<double>> entries;
        entries.reserve(m_ * 4);
        for (std::size_t p = 0; p < m_; ++p)
        {
            const std::size_t j = head_[p];
            const auto col = static_cast<Eigen::Index>(p);
            if (j >= n_)
            {
                entries.emplace_back(static_cast<Eigen::Index>(j - n_), col, -1.0);
                continue;
            }
            const SparseColumn& c = columns_[j];
            for (std::size_t k = 0; k < c.rows.size(); ++k)
                entries.emplace_back(static_cast<Eigen::Index>(c.rows[k]), col, c.values[k]);
        }
        Eigen::SparseMatrix<double> b(m, m);
        b.setFromTriplets(entries.begin(), entries.end());
        b.makeCompressed();
        return b;
    }

    // Fresh inverse of the basis and basic values from the nonbasic ones,
    // with one step of iterative refinement.
    void refactor()
    {
        since_refactor_ = 0;
        if (m_ == 0)
            return;
        const Eigen::SparseMatrix<double> b = basis_matrix();
        Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
        lu.compute(b);
        if (lu.info() != Eigen::Success)
        {
            // structurally singular factor; the dense path still pivots through it
            const Eigen::MatrixXd dense(b);
            Eigen::PartialPivLU<Eigen::MatrixXd> plu(dense);
            binv_ = plu.inverse();
        }
        else
        {
            binv_ = lu.solve(Eigen::MatrixXd::Identity(b.rows(), b.cols()));
        }

        const auto m = static_cast<Eigen::Index>(m_);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
        for (std::size_t j = 0; j < n_ + m_; ++j)
        {
            if (state_[j] == NonbasicAt::Basic || x_[j] == 0.0)
                continue;
            if (j >= n_)
            {
                rhs[static_cast<Eigen::Index>(j - n_)] += x_[j];
                continue;
            }
            const SparseColumn& c = columns_[j];
            for (std::size_t k = 0; k < c.rows.size(); ++k)
                rhs[static_cast<Eigen::Index>(c.rows[k])] -= c.values[k] * x_[j];
        }
        Eigen::VectorXd xb = binv_ * rhs;
        const Eigen::VectorXd residual = rhs - b * xb;
        xb += binv_ * residual;
        for (std::size_t p = 0; p < m_; ++p)
            x_[head_[p]] = xb[static_cast<Eigen::Index>(p)];
    }

    // Phase-1 cost of a basic value: -1 below its lower bound, +1 above.
    double infeasibility_cost(std::size_t j) const
    {
        if (x_[j] < lower_[j] - opt_.primal_tolerance)
            return -1.0;
        if (x_[j] > upper_[j] + opt_.primal_tolerance)
            return 1.0;
        return 0.0;
    }

    struct Pricing
    {
        std::ptrdiff_t entering = -1;
        double direction = 0.0;
    };

    Pricing price(const Eigen::VectorXd& y, bool phase_one, bool bland) const
    {
        const double tol = opt_.dual_tolerance * (phase_one ? 1.0 : cost_scale_);
        Pricing best;
        double best_score = 0.0;
        for (std::size_t j = 0; j < n_ + m_; ++j)
        {
            const NonbasicAt s = state_[j];
            if (s == NonbasicAt::Basic || lower_[j] == upper_[j])
                continue;
            const double c = phase_one ? 0.0 : cost_[j];
            const double d = c - column_dot(j, y);
            double dir = 0.0;
            if (s == NonbasicAt::Lower && d < -tol)
                dir = 1.0;
            else if (s == NonbasicAt::Upper && d > tol)
                dir = -1.0;
            else if (s == NonbasicAt::Zero && std::abs(d) > tol)
                dir = d < 0.0 ? 1.0 : -1.0;
            if (dir == 0.0)
                continue;
            if (bland)
                return Pricing{static_cast<std::ptrdiff_t>(j), dir};
            if (std::abs(d) > best_score)
            {
                best_score = std::abs(d);
                best = Pricing{static_cast<std::ptrdiff_t>(j), dir};
            }
        }
        return best;
    }

    struct Ratio
    {
        std::ptrdiff_t leaving_pos = -1;  // -1: bound flip of the entering column
        double step = kInfinity;
        bool leave_at_upper = false;
    };

    // Distance a basic value may travel at the given rate before reaching
    // the bound relevant to its current feasibility state. `slack` relaxes
    // the bound (Harris pass one).
    bool bound_limit(std::size_t j, double rate, double slack, double& limit, bool& at_upper) const
    {
        const double v = x_[j];
        const double tol = opt_.primal_tolerance;
        const bool below = v < lower_[j] - tol;
        const bool above = v > upper_[j] + tol;
        if (rate > 0.0)
        {
            if (above)
                return false;
            const double target = below ? lower_[j] : upper_[j];
            if (!std::isfinite(target))
                return false;
            limit = (target - v + slack) / rate;
            at_upper = !below;
            return true;
        }
        if (below)
            return false;
        const double target = above ? upper_[j] : lower_[j];
        if (!std::isfinite(target))
            return false;
        limit = (v - target + slack) / -rate;
        at_upper = above;
        return true;
    }

    Ratio ratio_test(std::size_t q, double dir, const Eigen::VectorXd& alpha, bool bland) const
    {
        Ratio r;
        const double flip = upper_[q] - lower_[q];
        if (std::isfinite(flip))
            r.step = flip;

        if (bland)
        {
            // textbook minimum ratio, lowest column index on ties
            std::size_t best_col = 0;
            for (std::size_t p = 0; p < m_; ++p)
            {
                const double a = alpha[static_cast<Eigen::Index>(p)];
                if (std::abs(a) <= opt_.pivot_tolerance)
                    continue;
                double limit = 0.0;
                bool at_upper = false;
                if (!bound_limit(head_[p], -dir * a, 0.0, limit, at_upper))
                    continue;
                limit = std::max(limit, 0.0);
                const bool tie = r.leaving_pos >= 0 && std::abs(limit - r.step) <= 1e-12 * (1.0 + r.step);
                if (limit < r.step - 1e-12 * (1.0 + r.step) || (tie && head_[p] < best_col))
                {
                    r.step = limit;
                    r.leaving_pos = static_cast<std::ptrdiff_t>(p);
                    r.leave_at_upper = at_upper;
                    best_col = head_[p];
                }
            }
            return r;
        }

        // Harris two-pass: bound the step with relaxed bounds, then take the
        // largest pivot among rows whose exact ratio fits under it.
        double relaxed = kInfinity;
        for (std::size_t p = 0; p < m_; ++p)
        {
            const double a = alpha[static_cast<Eigen::Index>(p)];
            if (std::abs(a) <= opt_.pivot_tolerance)
                continue;
            double limit = 0.0;
            bool at_upper = false;
            if (bound_limit(head_[p], -dir * a, opt_.primal_tolerance, limit, at_upper))
                relaxed = std::min(relaxed, limit);
        }
        if (!std::isfinite(relaxed))
            return r;
        if (std::isfinite(r.step) && r.step <= relaxed)
            return r;

        double best_pivot = 0.0;
        std::size_t best_col = 0;
        for (std::size_t p = 0; p < m_; ++p)
        {
            const double a = alpha[static_cast<Eigen::Index>(p)];
            if (std::abs(a) <= opt_.pivot_tolerance)
                continue;
            double limit = 0.0;
            bool at_upper = false;
            if (!bound_limit(head_[p], -dir * a, 0.0, limit, at_upper) || limit > relaxed)
                continue;
            const double mag = std::abs(a);
            if (mag > best_pivot || (mag == best_pivot && head_[p] < best_col))
            {
                best_pivot = mag;
                best_col = head_[p];
                r.leaving_pos = static_cast<std::ptrdiff_t>(p);
                r.step = std::max(limit, 0.0);
                r.leave_at_upper = at_upper;
            }
        }
        return r;
    }

    void pivot(std::size_t q, double dir, const Eigen::VectorXd& alpha, const Ratio& r)
    {
        const double theta = r.step;
        x_[q] += dir * theta;
        for (std::size_t p = 0; p < m_; ++p)
            x_[head_[p]] -= dir * theta * alpha[static_cast<Eigen::Index>(p)];

        if (r.leaving_pos < 0)
        {
            if (state_[q] == NonbasicAt::Lower)
            {
                state_[q] = NonbasicAt::Upper;
                x_[q] = upper_[q];
            }
            else
            {
                state_[q] = NonbasicAt::Lower;
                x_[q] = lower_[q];
            }
            return;
        }

        const auto p = static_cast<std::size_t>(r.leaving_pos);
        const std::size_t leaving = head_[p];
        if (r.leave_at_upper)
        {
            state_[leaving] = NonbasicAt::Upper;
            x_[leaving] = upper_[leaving];
        }
        else
        {
            state_[leaving] = NonbasicAt::Lower;
            x_[leaving] = lower_[leaving];
        }
        position_[leaving] = -1;
        head_[p] = q;
        position_[q] = static_cast<std::ptrdiff_t>(p);
        state_[q] = NonbasicAt::Basic;

        const auto pi = static_cast<Eigen::Index>(p);
        const Eigen::RowVectorXd pivot_row = binv_.row(pi) / alpha[pi];
        binv_.noalias() -= alpha * pivot_row;
        binv_.row(pi) = pivot_row;

        if (++since_refactor_ >= opt_.refactor_interval)
            refactor();
    }

    Eigen::VectorXd duals_for(bool phase_one) const
    {
        const auto m = static_cast<Eigen::Index>(m_);
        Eigen::VectorXd cb(m);
        for (std::size_t p = 0; p < m_; ++p)
        {
            const std::size_t j = head_[p];
            cb[static_cast<Eigen::Index>(p)] = phase_one ? infeasibility_cost(j) : cost_[j];
        }
        return binv_.transpose() * cb;
    }

    bool any_infeasible() const
    {
        for (std::size_t p = 0; p < m_; ++p)
        {
            if (infeasibility_cost(head_[p]) != 0.0)
                return true;
        }
        return false;
    }

    SolveStatus iterate(std::int64_t& iterations)
    {
        int degenerate_run = 0;
        bool bland = false;
        bool confirmed = false;  // last termination check ran on a fresh factor
        int unbounded_retries = 0;

        while (true)
        {
            if (iterations >= opt_.max_iterations)
                return SolveStatus::IterationLimit;

            const bool phase_one = any_infeasible();
            const Eigen::VectorXd y = duals_for(phase_one);
            const Pricing pr = price(y, phase_one, bland);

            if (pr.entering < 0)
            {
                if (since_refactor_ > 0 && !confirmed)
                {
                    refactor();
                    confirmed = true;
                    continue;
                }
                return phase_one ? SolveStatus::Infeasible : SolveStatus::Optimal;
            }
            confirmed = false;

            const auto q = static_cast<std::size_t>(pr.entering);
            const Eigen::VectorXd alpha = ftran(q);
            const Ratio r = ratio_test(q, pr.direction, alpha, bland);
            if (!std::isfinite(r.step))
            {
                if (!phase_one)
                    return SolveStatus::Unbounded;
                // cannot happen in exact arithmetic; retry on a fresh factor
                if (++unbounded_retries > 3)
                    return SolveStatus::Infeasible;
                refactor();
                continue;
            }

            pivot(q, pr.direction, alpha, r);
            ++iterations;

            if (r.step <= opt_.primal_tolerance)
            {
                if (++degenerate_run >= opt_.degenerate_stall_limit)
                    bland = true;
            }
            else
            {
                degenerate_run = 0;
                bland = false;
            }
        }
    }

    void finish(Solution& sol)
    {
        refactor();
        sol.primal.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_));
        // round-off dust next to a bound reads as a tiny build in reports
        for (std::size_t j = 0; j < n_; ++j)
        {
            double& x = sol.primal[j];
            for (double b : {lower_[j], upper_[j]})
            {
                if (std::isfinite(b) && std::abs(x - b) <= 1e-9 * (1.0 + std::abs(b)))
                    x = b;
            }
        }
        const Eigen::VectorXd y = m_ > 0 ? duals_for(false) : Eigen::VectorXd();
        sol.duals.resize(m_);
        for (std::size_t i = 0; i < m_; ++i)
            sol.duals[i] = y[static_cast<Eigen::Index>(i)];
        sol.reduced_costs.resize(n_);
        for (std::size_t j = 0; j < n_; ++j)
            sol.reduced_costs[j] = state_[j] == NonbasicAt::Basic ? 0.0 : cost_[j] - column_dot(j, y);
        sol.objective = lp_.objective_value(sol.primal);

        if (sol.status != SolveStatus::Optimal)
            return;
        const Verification v = verify(lp_, sol.primal, sol.duals);
        const double tol = opt_.report_tolerance;
        const double dual_scale = tol * cost_scale_;
        if (!v.primal_feasible(tol) || v.max_dual_sign_violation > dual_scale || v.duality_gap > tol)
        {
            sol.numerically_unstable = true;
            sol.message = "residuals exceed tolerance after refinement: bound " +
                          std::to_string(v.max_bound_violation) + ", row " + std::to_string(v.max_row_violation) +
                          ", dual sign " + std::to_string(v.max_dual_sign_violation) + ", gap " +
                          std::to_string(v.duality_gap);
        }
    }
};

Solution solve_without_rows(const LinearProgram& lp)
{
    Solution sol;
    sol.status = SolveStatus::Optimal;
    for (const Variable& v : lp.variables())
    {
        double x = 0.0;
        if (v.cost > 0.0)
            x = v.lower;
        else if (v.cost < 0.0)
            x = v.upper;
        else
            x = std::isfinite(v.lower) ? v.lower : (std::isfinite(v.upper) ? v.upper : 0.0);
        if (!std::isfinite(x))
        {
            sol.status = SolveStatus::Unbounded;
            x = 0.0;
        }
        sol.primal.push_back(x);
        sol.reduced_costs.push_back(v.cost);
    }
    sol.objective = lp.objective_value(sol.primal);
    return sol;
}

}  // namespace

Solution solve(const LinearProgram& lp, const SolverOptions& options)
{
    if (auto problems = lp.check(); !problems.empty())
        throw std::invalid_argument("invalid linear program: " + problems.front());
    for (const Variable& v : lp.variables())
    {
        if (v.lower > v.upper)
        {
            Solution s;
            s.status = SolveStatus::Infeasible;
            return s;
        }
    }
    if (lp.num_rows() == 0)
        return solve_without_rows(lp);
    RevisedSimplex simplex(lp, options);
    return simplex.run();
}

Verification verify(const LinearProgram& lp, const std::vector<double>& primal, const std::vector<double>& duals)
{
    Verification v;
    const std::size_t n = lp.num_variables();
    const std::size_t m = lp.num_rows();
    if (primal.size() != n || duals.size() != m)
        throw std::invalid_argument("solution vector sizes do not match the program");

    std::vector<double> reduced(n);
    for (std::size_t j = 0; j < n; ++j)
        reduced[j] = lp.variables()[j].cost;
    for (std::size_t i = 0; i < m; ++i)
    {
        for (const Term& t : lp.rows()[i].terms)
            reduced[t.col.index] -= t.coef * duals[i];
    }

    auto complementarity = [](double slack, double dual) {
        return std::abs(slack) * std::abs(dual) / std::max(1.0, std::abs(dual));
    };

    double dual_obj = 0.0;
    for (std::size_t i = 0; i < m; ++i)
    {
        const Row& r = lp.rows()[i];
        const double act = lp.activity(RowRef{i}, primal);
        const double slack = act - r.rhs;
        const double y = duals[i];
        switch (r.sense)
        {
        case RowSense::Le:
            v.max_row_violation = std::max(v.max_row_violation, slack);
            v.max_dual_sign_violation = std::max(v.max_dual_sign_violation, y);
            break;
        case RowSense::Ge:
            v.max_row_violation = std::max(v.max_row_violation, -slack);
            v.max_dual_sign_violation = std::max(v.max_dual_sign_violation, -y);
            break;
        case RowSense::Eq:
            v.max_row_violation = std::max(v.max_row_violation, std::abs(slack));
            break;
        }
        if (r.sense != RowSense::Eq)
            v.max_complementarity = std::max(v.max_complementarity, complementarity(slack, y));
        dual_obj += y * r.rhs;
    }

    for (std::size_t j = 0; j < n; ++j)
    {
        const Variable& var = lp.variables()[j];
        const double x = primal[j];
        const double d = reduced[j];
        v.max_bound_violation = std::max({v.max_bound_violation, var.lower - x, x - var.upper});
        // d > 0 pairs with the lower bound, d < 0 with the upper bound
        if (d > 0.0)
        {
            if (std::isfinite(var.lower))
            {
                dual_obj += d * var.lower;
                v.max_complementarity = std::max(v.max_complementarity, complementarity(x - var.lower, d));
            }
            else
            {
                v.max_dual_sign_violation = std::max(v.max_dual_sign_violation, d);
            }
        }
        else if (d < 0.0)
        {
            if (std::isfinite(var.upper))
            {
                dual_obj += d * var.upper;
                v.max_complementarity = std::max(v.max_complementarity, complementarity(var.upper - x, d));
            }
            else
            {
                v.max_dual_sign_violation = std::max(v.max_dual_sign_violation, -d);
            }
        }
    }
    v.primal_objective = lp.objective_value(primal);
    v.dual_objective = dual_obj;
    v.duality_gap = std::abs(v.primal_objective - dual_obj) / (1.0 + std::abs(v.primal_objective));
    return v;
}

}  // namespace coloexp
