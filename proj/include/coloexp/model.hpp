#pragma once

#include "coloexp/domain.hpp"
#include "coloexp/lp.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace coloexp
{

enum class CostCategory
{
    Invest,
    Fom,
    Vom,
    Nse,
};

inline constexpr std::array<CostCategory, 4> kAllCostCategories = {
    CostCategory::Invest, CostCategory::Fom, CostCategory::Vom, CostCategory::Nse};

std::string_view to_string(CostCategory category);

/// One objective contribution, kept so the optimum can be split by category.
struct CostTerm
{
    Col col;
    double coef = 0.0;
    CostCategory category = CostCategory::Invest;
};

/// New (Ω), retired (Δ) and total capacity of one component.
struct CapacityVars
{
    Col built;
    Col retired;
    Col total;
};

/// Variables of one co-located resource. Hourly vectors are empty when the
/// governing component is absent.
struct ColoVariableBlock
{
    std::string resource_id;
    std::array<std::optional<CapacityVars>, kComponentCount> capacity;
    std::vector<Col> theta_pv;
    std::vector<Col> theta_wind;
    std::vector<Col> theta_dc;
    std::vector<Col> pi_dc;
    std::vector<Col> theta_ac;
    std::vector<Col> pi_ac;
    std::vector<Col> theta_grid;
    std::vector<Col> pi_grid;
    std::vector<Col> soc;

    [[nodiscard]] const std::optional<CapacityVars>& cap(ComponentKind k) const
    {
        return capacity[static_cast<std::size_t>(k)];
    }
};

/// System-level variables; outer index follows the SystemDescription
/// vectors, inner index is the hour.
struct SystemVariableBlock
{
    std::vector<Col> thermal_new;
    std::vector<std::vector<Col>> thermal_gen;
    std::vector<std::vector<Col>> nse;
    std::vector<Col> line_new;
    std::vector<std::vector<Col>> flow_fwd;
    std::vector<std::vector<Col>> flow_bwd;
};

/// Owns the LP under assembly together with the per-category cost ledger.
class ModelBuilder
{
public:
    ModelBuilder(std::size_t horizon, double time_weight) : horizon_(horizon), time_weight_(time_weight) {}

    [[nodiscard]] std::size_t horizon() const { return horizon_; }
    /// Multiplier applied to every hourly cost.
    [[nodiscard]] double time_weight() const { return time_weight_; }

    Col add_variable(std::string id, double lower = 0.0, double upper = kInfinity)
    {
        return lp_.add_variable(std::move(id), lower, upper, 0.0);
    }
    RowRef add_row(std::string id, std::vector<Term> terms, RowSense sense, double rhs)
    {
        return lp_.add_row(std::move(id), std::move(terms), sense, rhs);
    }
    void add_cost(Col col, double coef, CostCategory category);

    [[nodiscard]] const LinearProgram& lp() const { return lp_; }
    [[nodiscard]] LinearProgram& lp() { return lp_; }
    [[nodiscard]] const std::vector<CostTerm>& cost_terms() const { return costs_; }
    std::vector<CostTerm> take_cost_terms() { return std::move(costs_); }

private:
    std::size_t horizon_;
    double time_weight_;
    LinearProgram lp_;
    std::vector<CostTerm> costs_;
};

/// Hour label used in ids: 1-based.
std::string hour_label(std::size_t t);

/// The assembled optimisation problem for one system.
struct Model
{
    LinearProgram lp;
    std::size_t horizon = 0;
    std::vector<ColoVariableBlock> colo;
    SystemVariableBlock system;
    std::vector<CostTerm> cost_terms;
    std::optional<RowRef> forced_battery_row;
    std::optional<RowRef> rps_row;

    /// Objective value split by category for a primal vector.
    [[nodiscard]] std::array<double, 4> cost_breakdown(const std::vector<double>& x) const;
};

/// Emits every co-located resource, the system context and the objective.
Model build_model(const SystemDescription& system);

}  // namespace coloexp
