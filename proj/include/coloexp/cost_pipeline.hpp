#pragma once

// Overnight-to-annual cost conversion for co-located sites. Monetary
// inputs follow the published units ($/kW, $/kWh, $M line items); every
// output is per MW or MWh so it can go straight into a ColoResource.

#include "coloexp/domain.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coloexp::costs
{

struct LineItem
{
    std::string name;
    double pv = 0.0;        // $M, standalone PV (100 MW DC)
    double storage = 0.0;   // $M, standalone storage (60 MW / 240 MWh)
    double inverter = 0.0;  // $M, inverter (77 MW AC)
};

struct CostBreakdown2021
{
    std::vector<LineItem> items;
    double pv_basis_mw_dc = 100.0;
    double storage_basis_mwh = 240.0;
    double inverter_basis_mw_ac = 77.0;
    // AC-system per-unit costs ($M per MW AC and per MWh) the DC figures
    // are compared against.
    double pv_ac_per_mw = 1.14;
    double storage_ac_per_mwh = 0.38;

    [[nodiscard]] double pv_total() const;
    [[nodiscard]] double storage_total() const;
    [[nodiscard]] double inverter_total() const;
};

struct UnitCosts
{
    double pv_dc_per_mw = 0.0;       // $M / MW DC
    double storage_per_mwh = 0.0;    // $M / MWh
    double inverter_per_mw_ac = 0.0; // $M / MW AC
    double pv_dc_ac_ratio = 0.0;
    double storage_dc_ac_ratio = 0.0;
};

/// Per-unit DC and inverter costs and the DC:AC ratios. Ratios are taken
/// at the two-decimal precision of the published per-unit figures.
/// Throws DataError on a non-positive basis.
UnitCosts split_dc_ac(const CostBreakdown2021& breakdown);

struct FinanceParams
{
    double wacc = 0.0;
    double lifespan_years = 1.0;
    double regional_multiplier = 1.0;
};

double capital_recovery_factor(double wacc, double lifespan_years);

/// overnight * regional_multiplier * CRF(wacc, lifespan).
double annuitize(double overnight, const FinanceParams& fin);

/// Annual cost of one component in one site context. Grid rows are per
/// MW-km when per_km is set.
struct AnnualizedCost
{
    std::string context;
    ComponentKind component = ComponentKind::Grid;
    double invest = 0.0;
    double fom = 0.0;
    double vom = 0.0;
    bool per_km = false;
    std::string regional_class;
};

struct AnnualizedCostTable
{
    std::string case_name;
    std::vector<AnnualizedCost> entries;

    [[nodiscard]] const AnnualizedCost* find(std::string_view context, ComponentKind component) const;
};

struct TaxCredit
{
    double ptc_per_mwh = 0.0;
    double itc_fraction = 0.0;
};

/// Credits keyed by technology: solar, wind, storage.
using TaxPolicy = std::map<std::string, TaxCredit>;

/// PTC becomes negative VOM on generation; ITC scales invest by (1 - itc),
/// floored at zero. Throws DataError when a technology carries both.
AnnualizedCostTable apply_tax_credits(AnnualizedCostTable table, const TaxPolicy& policy);

/// Overnight endpoints per case. Either given directly, or as a 2021 base
/// with per-case decline fractions.
struct CostCaseRow
{
    std::optional<double> low;
    std::optional<double> mid;
    std::optional<double> base_2021;
    std::optional<double> decline_low;
    std::optional<double> decline_mid;

    [[nodiscard]] double value(std::string_view case_name, std::string_view key) const;
};

struct CostInputs
{
    CostBreakdown2021 breakdown;
    // (context, component name) -> finance
    std::map<std::pair<std::string, std::string>, FinanceParams> finance;
    std::map<std::pair<std::string, std::string>, std::string> regional_class;
    TaxPolicy policy;
    std::map<std::string, CostCaseRow> cases;
};

inline constexpr std::array<std::string_view, 2> kCostCases = {"low", "mid"};
inline constexpr std::array<std::string_view, 3> kContexts = {"solar", "standalone_storage", "wind"};

/// Overnight endpoints of one case in the published units ($/kW, $/kWh,
/// $/kW-km, $/kW-yr), keyed as in cost_cases.csv. Throws DataError when a
/// key has neither an endpoint nor a base with a decline factor.
std::map<std::string, double> overnight_costs(const CostInputs& inputs, std::string_view case_name);

/// Annualized, credit-adjusted tables for the low and mid cases.
std::map<std::string, AnnualizedCostTable> build_cost_cases(const CostInputs& inputs);

/// Reads cost_breakdown_2021.csv, cost_basis.csv (optional),
/// finance_params.csv, policy_credits.csv and cost_cases.csv.
CostInputs load_cost_inputs(const std::filesystem::path& dir);

void write_cost_table(const AnnualizedCostTable& table, const std::filesystem::path& path);
AnnualizedCostTable read_cost_table(const std::filesystem::path& path, std::string case_name);

/// Zone-dependent cost modifiers.
struct RegionalAdjustments
{
    std::map<std::pair<std::string, std::string>, double> multiplier;  // (zone, class)
    std::map<std::string, double> grid_rate_scale;                     // zone -> factor on grid invest

    [[nodiscard]] double factor(const std::string& zone, const std::string& cls) const;
};

/// Reads regional_multipliers.csv (zone,class,multiplier) and
/// grid_rates.csv (zone,scale) when present.
RegionalAdjustments load_regional_adjustments(const std::filesystem::path& dir);

/// Site context used for cost lookup: solar when pv is present, wind when
/// wind is present, otherwise standalone_storage.
std::string_view site_context(const ColoResource& resource);

/// Overwrites the invest/fom/vom of every component found in the table.
/// Grid invest is per km times interconnection_km.
SystemDescription apply_cost_case(SystemDescription system, const AnnualizedCostTable& table,
                                  const RegionalAdjustments& regional = {});

}  // namespace coloexp::costs
