#pragma once

#include "coloexp/cost_pipeline.hpp"
#include "coloexp/domain.hpp"
#include "coloexp/metrics.hpp"
#include "coloexp/simplex.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coloexp
{

enum class ScenarioMode
{
    Fixed,
    Optimized,
    Colocated,
};

std::string_view to_string(ScenarioMode mode);
std::optional<ScenarioMode> mode_from_string(std::string_view name);

inline constexpr double kFixedIlrPv = 1.3;
inline constexpr double kFixedIlrWind = 1.0;
/// Suffix of the standalone storage site split off a hybrid.
inline constexpr std::string_view kSplitStorageSuffix = "_storage";

struct ScenarioSpec
{
    int run_id = 0;
    ScenarioMode mode = ScenarioMode::Colocated;
    std::string cost_case = "none";  // low, mid or none (resource costs as loaded)
    double forced_battery_mw = 0.0;
};

/// Reads run_id,mode,cost_case,forced_battery_mw. Throws DataError on a
/// duplicate run id or (mode, cost_case, forced) combination.
std::vector<ScenarioSpec> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::vector<ScenarioSpec>& specs, const std::filesystem::path& path);

/// Three modes by two cost cases by four forced storage levels.
std::vector<ScenarioSpec> default_manifest();

/// Data-level scenario transform. fixed and optimized move storage off VRE
/// sites into separate standalone sites (fixed also pins the VRE ratios);
/// colocated returns the system unchanged. Idempotent for every mode.
SystemDescription apply_mode(SystemDescription system, ScenarioMode mode);

/// Annualized cost tables by case plus regional modifiers.
struct CostCatalog
{
    std::map<std::string, costs::AnnualizedCostTable> tables;
    costs::RegionalAdjustments regional;

    /// Applies the named case; "none" returns the system unchanged.
    /// Throws DataError for an unknown case.
    [[nodiscard]] SystemDescription apply(SystemDescription system, const std::string& cost_case) const;
};

/// Tables from <dir>/annualized_costs_<case>.csv when present, otherwise
/// built from cost inputs in <dir>/costs when that exists.
CostCatalog load_cost_catalog(const std::filesystem::path& system_dir);

struct RunResult
{
    ScenarioSpec spec;
    SolveStatus status = SolveStatus::IterationLimit;
    bool ok = false;
    std::string message;
    double objective = 0.0;
    std::optional<RunMetrics> metrics;
    double seconds = 0.0;
};

/// The system a scenario solves: cost case, then mode, then forced level.
SystemDescription scenario_system(const SystemDescription& base, const CostCatalog& catalog,
                                  const ScenarioSpec& spec);

/// Solves one scenario and writes its reports to out_dir when given.
/// Never throws for solver or data failures; they are recorded in the
/// result and in out_dir/metrics.csv.
RunResult run_scenario(const SystemDescription& base, const CostCatalog& catalog, const ScenarioSpec& spec,
                       const std::optional<std::filesystem::path>& out_dir, const SolverOptions& options = {});

/// Runs every manifest row on up to `workers` threads; outputs land in
/// runs_dir/<run_id>/. Results follow manifest order.
std::vector<RunResult> run_matrix(const SystemDescription& base, const CostCatalog& catalog,
                                  const std::vector<ScenarioSpec>& manifest, const std::filesystem::path& runs_dir,
                                  unsigned workers = 1, const SolverOptions& options = {});

}  // namespace coloexp
