#pragma once

#include "coloexp/domain.hpp"
#include "coloexp/model.hpp"
#include "coloexp/simplex.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coloexp
{

/// Capacities below this (MW) are left out of ratio statistics.
inline constexpr double kCapacityFloor = 1e-3;

struct ResourceRatios
{
    std::string resource;
    std::optional<double> pv_inverter;
    std::optional<double> pv_grid;
    std::optional<double> wind_grid;
};

struct RatioSummary
{
    std::vector<ResourceRatios> per_resource;
    // Weighted by built VRE capacity.
    std::optional<double> avg_pv_inverter;
    std::optional<double> avg_pv_grid;
    std::optional<double> avg_wind_grid;
};

RatioSummary compute_ratios(const SystemDescription& system, const Model& model, const Solution& solution);

struct GwKm
{
    double interconnection_gw = 0.0;
    double interconnection_gw_km = 0.0;
    double interzonal_gw = 0.0;      // existing + new
    double interzonal_gw_km = 0.0;
    double new_interzonal_gw_km = 0.0;
};

GwKm compute_gw_km(const SystemDescription& system, const Model& model, const Solution& solution);

/// Negated dual of the forced-battery row, so a marginal MW that lowers
/// cost has positive value. Throws DataError when the row is absent.
double marginal_value_of_storage(const Model& model, const Solution& solution);

struct Curtailment
{
    std::string resource;
    ComponentKind component = ComponentKind::Pv;
    double available_mwh = 0.0;
    double curtailed_mwh = 0.0;

    [[nodiscard]] double percent() const { return available_mwh > kCapacityFloor ? 100.0 * curtailed_mwh / available_mwh : 0.0; }
};

std::vector<Curtailment> compute_curtailment(const SystemDescription& system, const Model& model,
                                             const Solution& solution);

/// Share of total storage energy capacity by site type, in percent.
struct StorageSplit
{
    double with_pv = 0.0;
    double with_wind = 0.0;
    double standalone = 0.0;
    double total_mwh = 0.0;
};

StorageSplit storage_colocation_split(const SystemDescription& system, const Model& model, const Solution& solution);

struct RunMetrics
{
    RatioSummary ratios;
    GwKm gw_km;
    double total_cost = 0.0;
    std::array<double, 4> cost_components{};  // indexed by CostCategory
    std::optional<double> marginal_value_of_storage;
    std::vector<Curtailment> curtailment;
    StorageSplit storage_split;
};

RunMetrics compute_metrics(const SystemDescription& system, const Model& model, const Solution& solution);

/// Writes capacity.csv, dispatch.csv, metrics.csv, duals.csv and costs.csv.
/// `run_info` lands in metrics.csv under scope "run".
void write_reports(const SystemDescription& system, const Model& model, const Solution& solution,
                   const RunMetrics& metrics, const std::vector<std::pair<std::string, std::string>>& run_info,
                   const std::filesystem::path& out_dir);

/// metrics.csv for a run without an optimal solution: run info only.
void write_run_info(const std::vector<std::pair<std::string, std::string>>& run_info,
                    const std::filesystem::path& out_dir);

/// Aggregates <runs_dir>/*/metrics.csv into <runs_dir>/summary.csv, one
/// row per run sorted by (mode, cost_case, forced_battery_mw). Returns the
/// number of rows.
std::size_t write_summary(const std::filesystem::path& runs_dir);

}  // namespace coloexp
