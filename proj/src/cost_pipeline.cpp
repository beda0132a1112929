#include "coloexp/cost_pipeline.hpp"

#include "coloexp/csv.hpp"
#include "coloexp/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>

namespace coloexp::costs
{

namespace
{

using K = ComponentKind;

// Cost-case keys feeding each component: capital, fixed O&M.
struct ComponentKeys
{
    K component;
    const char* capex;
    const char* fom;
};

constexpr std::array<ComponentKeys, 5> kComponentKeys = {{
    {K::Pv, "solar_capex", "solar_fom"},
    {K::Wind, "wind_capex", "wind_fom"},
    {K::StorageEnergy, "battery_capex", "battery_fom"},
    {K::Inverter, "inverter_capex", "inverter_fom"},
    {K::Grid, "grid_capex", nullptr},
}};

// Components priced in each site context.
const std::map<std::string_view, std::vector<K>>& context_components()
{
    static const std::map<std::string_view, std::vector<K>> m = {
        {"solar", {K::Pv, K::StorageEnergy, K::Inverter, K::Grid}},
        {"standalone_storage", {K::StorageEnergy, K::Inverter, K::Grid}},
        {"wind", {K::Wind, K::StorageEnergy, K::Inverter, K::Grid}},
    };
    return m;
}

std::string_view technology(K k)
{
    switch (k)
    {
    case K::Pv:
        return "solar";
    case K::Wind:
        return "wind";
    case K::StorageEnergy:
        return "storage";
    default:
        return "";
    }
}

double round2(double v)
{
    return std::round(v * 100.0) / 100.0;
}

// Published units are per kW or kWh; the model works per MW or MWh.
constexpr double kPerKiloToPerMega = 1000.0;

}  // namespace

double CostBreakdown2021::pv_total() const
{
    double s = 0.0;
    for (const auto& i : items)
        s += i.pv;
    return s;
}

double CostBreakdown2021::storage_total() const
{
    double s = 0.0;
    for (const auto& i : items)
        s += i.storage;
    return s;
}

double CostBreakdown2021::inverter_total() const
{
    double s = 0.0;
    for (const auto& i : items)
        s += i.inverter;
    return s;
}

UnitCosts split_dc_ac(const CostBreakdown2021& b)
{
    if (!(b.pv_basis_mw_dc > 0.0) || !(b.storage_basis_mwh > 0.0) || !(b.inverter_basis_mw_ac > 0.0))
        throw DataError("cost breakdown basis capacities must be > 0");
    if (!(b.pv_ac_per_mw > 0.0) || !(b.storage_ac_per_mwh > 0.0))
        throw DataError("AC reference costs must be > 0");
    UnitCosts u;
    u.pv_dc_per_mw = b.pv_total() / b.pv_basis_mw_dc;
    u.storage_per_mwh = b.storage_total() / b.storage_basis_mwh;
    u.inverter_per_mw_ac = b.inverter_total() / b.inverter_basis_mw_ac;
    u.pv_dc_ac_ratio = round2(u.pv_dc_per_mw) / b.pv_ac_per_mw;
    u.storage_dc_ac_ratio = round2(u.storage_per_mwh) / b.storage_ac_per_mwh;
    return u;
}

double capital_recovery_factor(double wacc, double lifespan_years)
{
    if (wacc == 0.0)
        return 1.0 / lifespan_years;
    return wacc / (1.0 - std::pow(1.0 + wacc, -lifespan_years));
}

double annuitize(double overnight, const FinanceParams& fin)
{
    return overnight * fin.regional_multiplier * capital_recovery_factor(fin.wacc, fin.lifespan_years);
}

const AnnualizedCost* AnnualizedCostTable::find(std::string_view context, ComponentKind component) const
{
    for (const auto& e : entries)
    {
        if (e.context == context && e.component == component)
            return &e;
    }
    return nullptr;
}

AnnualizedCostTable apply_tax_credits(AnnualizedCostTable table, const TaxPolicy& policy)
{
    for (const auto& [tech, credit] : policy)
    {
        if (credit.ptc_per_mwh != 0.0 && credit.itc_fraction != 0.0)
            throw DataError(fmt::format("technology '{}' has both a PTC and an ITC", tech));
    }
    for (auto& e : table.entries)
    {
        const auto it = policy.find(std::string(technology(e.component)));
        if (it == policy.end())
            continue;
        e.vom -= it->second.ptc_per_mwh;
        e.invest = std::max(0.0, e.invest * (1.0 - it->second.itc_fraction));
    }
    return table;
}

double CostCaseRow::value(std::string_view case_name, std::string_view key) const
{
    const auto& endpoint = case_name == "low" ? low : mid;
    if (endpoint)
        return *endpoint;
    const auto& decline = case_name == "low" ? decline_low : decline_mid;
    if (base_2021 && decline)
        return *base_2021 * (1.0 - *decline);
    throw DataError(fmt::format("cost case '{}': missing decline factors for '{}'", case_name, key));
}

std::map<std::string, double> overnight_costs(const CostInputs& inputs, std::string_view case_name)
{
    std::map<std::string, double> out;
    for (const auto& keys : kComponentKeys)
    {
        for (const char* key : {keys.capex, keys.fom})
        {
            if (key == nullptr)
                continue;
            const auto it = inputs.cases.find(key);
            if (it == inputs.cases.end())
                throw DataError(fmt::format("cost cases: missing key '{}'", key));
            out[key] = it->second.value(case_name, key);
        }
    }
    return out;
}

std::map<std::string, AnnualizedCostTable> build_cost_cases(const CostInputs& inputs)
{
    std::map<std::string, AnnualizedCostTable> out;
    for (auto case_name : kCostCases)
    {
        const auto overnight = overnight_costs(inputs, case_name);
        AnnualizedCostTable table;
        table.case_name = std::string(case_name);
        for (const auto& [context, components] : context_components())
        {
            for (K k : components)
            {
                const auto& keys = *std::find_if(kComponentKeys.begin(), kComponentKeys.end(),
                                                 [&](const ComponentKeys& c) { return c.component == k; });
                const std::pair<std::string, std::string> id{std::string(context), std::string(to_string(k))};
                const auto fin = inputs.finance.find(id);
                if (fin == inputs.finance.end())
                    throw DataError(fmt::format("finance params: missing ({}, {})", id.first, id.second));
                AnnualizedCost e;
                e.context = id.first;
                e.component = k;
                e.invest = annuitize(overnight.at(keys.capex) * kPerKiloToPerMega, fin->second);
                e.fom = keys.fom ? overnight.at(keys.fom) * kPerKiloToPerMega : 0.0;
                e.per_km = k == K::Grid;
                if (const auto cls = inputs.regional_class.find(id); cls != inputs.regional_class.end())
                    e.regional_class = cls->second;
                table.entries.push_back(std::move(e));
            }
        }
        out.emplace(std::string(case_name), apply_tax_credits(std::move(table), inputs.policy));
    }
    return out;
}

CostInputs load_cost_inputs(const std::filesystem::path& dir)
{
    CostInputs in;

    const auto breakdown = csv::Table::read(dir / "cost_breakdown_2021.csv");
    for (const char* col : {"line_item", "standalone_pv", "standalone_storage", "inverter"})
        (void)breakdown.require_column(col);
    for (const auto& rec : breakdown.records())
    {
        in.breakdown.items.push_back({breakdown.cell(rec, "line_item"), breakdown.number(rec, "standalone_pv"),
                                      breakdown.number(rec, "standalone_storage"),
                                      breakdown.number(rec, "inverter")});
    }

    if (std::filesystem::exists(dir / "cost_basis.csv"))
    {
        const auto basis = csv::Table::read(dir / "cost_basis.csv");
        const std::map<std::string, double*> fields = {
            {"pv_basis_mw_dc", &in.breakdown.pv_basis_mw_dc},
            {"storage_basis_mwh", &in.breakdown.storage_basis_mwh},
            {"inverter_basis_mw_ac", &in.breakdown.inverter_basis_mw_ac},
            {"pv_ac_per_mw", &in.breakdown.pv_ac_per_mw},
            {"storage_ac_per_mwh", &in.breakdown.storage_ac_per_mwh},
        };
        for (const auto& rec : basis.records())
        {
            const auto it = fields.find(basis.cell(rec, "key"));
            if (it == fields.end())
                basis.fail(rec, fmt::format("unknown key '{}'", basis.cell(rec, "key")));
            *it->second = basis.number(rec, "value");
        }
    }

    const auto finance = csv::Table::read(dir / "finance_params.csv");
    for (const char* col : {"context", "component", "wacc", "lifespan_yr"})
        (void)finance.require_column(col);
    for (const auto& rec : finance.records())
    {
        FinanceParams f;
        f.wacc = finance.number(rec, "wacc");
        f.lifespan_years = finance.number(rec, "lifespan_yr");
        f.regional_multiplier = finance.number_or(rec, "regional_multiplier", 1.0);
        if (!(f.wacc > 0.0) || f.lifespan_years < 1.0)
            finance.fail(rec, "wacc must be > 0 and lifespan >= 1");
        const std::string component = finance.cell(rec, "component");
        if (!component_from_string(component))
            finance.fail(rec, fmt::format("unknown component '{}'", component));
        const std::pair<std::string, std::string> id{finance.cell(rec, "context"), component};
        in.finance[id] = f;
        in.regional_class[id] = finance.cell(rec, "regional_class");
    }

    const auto credits = csv::Table::read(dir / "policy_credits.csv");
    (void)credits.require_column("technology");
    for (const auto& rec : credits.records())
    {
        TaxCredit c;
        c.ptc_per_mwh = credits.number_or(rec, "ptc_per_mwh", 0.0);
        c.itc_fraction = credits.number_or(rec, "itc_fraction", 0.0);
        if (c.ptc_per_mwh != 0.0 && c.itc_fraction != 0.0)
            credits.fail(rec, "both PTC and ITC assigned");
        in.policy[credits.cell(rec, "technology")] = c;
    }

    const auto cases = csv::Table::read(dir / "cost_cases.csv");
    (void)cases.require_column("key");
    for (const auto& rec : cases.records())
    {
        CostCaseRow row;
        row.low = cases.optional_number(rec, "low");
        row.mid = cases.optional_number(rec, "mid");
        row.base_2021 = cases.optional_number(rec, "base_2021");
        row.decline_low = cases.optional_number(rec, "decline_low");
        row.decline_mid = cases.optional_number(rec, "decline_mid");
        in.cases[cases.cell(rec, "key")] = row;
    }
    return in;
}

void write_cost_table(const AnnualizedCostTable& table, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError(fmt::format("cannot write {}", path.string()));
    out << "context,component,invest_per_unit_yr,fom_per_unit_yr,vom_per_mwh,per_km,regional_class\n";
    for (const auto& e : table.entries)
    {
        out << fmt::format("{},{},{},{},{},{},{}\n", e.context, to_string(e.component), e.invest, e.fom, e.vom,
                           e.per_km ? "true" : "false", e.regional_class);
    }
    if (!out)
        throw IoError(fmt::format("write failed: {}", path.string()));
}

AnnualizedCostTable read_cost_table(const std::filesystem::path& path, std::string case_name)
{
    const auto t = csv::Table::read(path);
    for (const char* col : {"context", "component", "invest_per_unit_yr", "fom_per_unit_yr", "vom_per_mwh"})
        (void)t.require_column(col);
    AnnualizedCostTable table;
    table.case_name = std::move(case_name);
    for (const auto& rec : t.records())
    {
        AnnualizedCost e;
        e.context = t.cell(rec, "context");
        const auto k = component_from_string(t.cell(rec, "component"));
        if (!k)
            t.fail(rec, fmt::format("unknown component '{}'", t.cell(rec, "component")));
        e.component = *k;
        e.invest = t.number(rec, "invest_per_unit_yr");
        e.fom = t.number(rec, "fom_per_unit_yr");
        e.vom = t.number(rec, "vom_per_mwh");
        e.per_km = t.boolean_or(rec, "per_km", false);
        e.regional_class = t.cell(rec, "regional_class");
        if (e.invest < 0.0 || e.fom < 0.0)
            t.fail(rec, "negative invest or fom");
        table.entries.push_back(std::move(e));
    }
    return table;
}

double RegionalAdjustments::factor(const std::string& zone, const std::string& cls) const
{
    const auto it = multiplier.find({zone, cls});
    return it == multiplier.end() ? 1.0 : it->second;
}

RegionalAdjustments load_regional_adjustments(const std::filesystem::path& dir)
{
    RegionalAdjustments r;
    if (std::filesystem::exists(dir / "regional_multipliers.csv"))
    {
        const auto t = csv::Table::read(dir / "regional_multipliers.csv");
        for (const auto& rec : t.records())
            r.multiplier[{t.cell(rec, "zone"), t.cell(rec, "class")}] = t.number(rec, "multiplier");
    }
    if (std::filesystem::exists(dir / "grid_rates.csv"))
    {
        const auto t = csv::Table::read(dir / "grid_rates.csv");
        for (const auto& rec : t.records())
            r.grid_rate_scale[t.cell(rec, "zone")] = t.number(rec, "scale");
    }
    return r;
}

std::string_view site_context(const ColoResource& r)
{
    if (r.has(K::Pv))
        return "solar";
    if (r.has(K::Wind))
        return "wind";
    return "standalone_storage";
}

SystemDescription apply_cost_case(SystemDescription system, const AnnualizedCostTable& table,
                                  const RegionalAdjustments& regional)
{
    for (auto& r : system.colo_resources)
    {
        const auto context = site_context(r);
        for (K k : r.components.members())
        {
            const auto* e = table.find(context, k);
            if (e == nullptr)
                continue;
            auto& p = r.param(k);
            double invest = e->invest * regional.factor(r.zone, e->regional_class);
            if (e->per_km)
            {
                const auto scale = regional.grid_rate_scale.find(r.zone);
                invest *= r.interconnection_km * (scale == regional.grid_rate_scale.end() ? 1.0 : scale->second);
            }
            p.invest_cost = invest;
            p.fom_cost = e->fom;
            p.vom_cost = e->vom;
        }
    }
    return system;
}

}  // namespace coloexp::costs
