#include "coloexp/system_formulation.hpp"

#include "coloexp/errors.hpp"

#include <fmt/format.h>

namespace coloexp
{

namespace
{

std::vector<Col> hourly(const std::string& prefix, ModelBuilder& b, double upper = kInfinity)
{
    std::vector<Col> cols;
    cols.reserve(b.horizon());
    for (std::size_t t = 0; t < b.horizon(); ++t)
        cols.push_back(b.add_variable(fmt::format("{}/{}", prefix, hour_label(t)), 0.0, upper));
    return cols;
}

}  // namespace

SystemVariableBlock register_system_variables(const SystemDescription& sys, ModelBuilder& b)
{
    SystemVariableBlock v;
    for (const auto& g : sys.thermal_resources)
    {
        v.thermal_new.push_back(b.add_variable("sys/thermal_new/" + g.id, 0.0, g.max_new));
        v.thermal_gen.push_back(hourly("sys/thermal_gen/" + g.id, b));
    }
    for (const auto& z : sys.zones)
    {
        std::vector<Col> nse;
        for (std::size_t t = 0; t < b.horizon(); ++t)
            nse.push_back(b.add_variable(fmt::format("sys/nse/{}/{}", z.id, hour_label(t)), 0.0, z.demand[t]));
        v.nse.push_back(std::move(nse));
    }
    for (const auto& l : sys.lines)
    {
        v.line_new.push_back(b.add_variable("sys/line_new/" + l.id(), 0.0, l.max_expansion));
        v.flow_fwd.push_back(hourly("sys/flow_fwd/" + l.id(), b));
        v.flow_bwd.push_back(hourly("sys/flow_bwd/" + l.id(), b));
    }
    return v;
}

std::vector<RowRef> emit_zonal_balance(const SystemDescription& sys, const std::vector<ColoVariableBlock>& colo,
                                       const SystemVariableBlock& v, ModelBuilder& b)
{
    std::vector<RowRef> rows;
    for (std::size_t zi = 0; zi < sys.zones.size(); ++zi)
    {
        const auto& z = sys.zones[zi];
        for (std::size_t t = 0; t < b.horizon(); ++t)
        {
            std::vector<Term> terms;
            for (std::size_t g = 0; g < sys.thermal_resources.size(); ++g)
            {
                if (sys.thermal_resources[g].zone == z.id)
                    terms.push_back({v.thermal_gen[g][t], 1.0});
            }
            for (std::size_t r = 0; r < sys.colo_resources.size(); ++r)
            {
                if (sys.colo_resources[r].zone != z.id)
                    continue;
                terms.push_back({colo[r].theta_grid[t], 1.0});
                terms.push_back({colo[r].pi_grid[t], -1.0});
            }
            for (std::size_t l = 0; l < sys.lines.size(); ++l)
            {
                const auto& line = sys.lines[l];
                if (line.to_zone == z.id)
                {
                    terms.push_back({v.flow_fwd[l][t], 1.0});
                    terms.push_back({v.flow_bwd[l][t], -1.0});
                }
                else if (line.from_zone == z.id)
                {
                    terms.push_back({v.flow_fwd[l][t], -1.0});
                    terms.push_back({v.flow_bwd[l][t], 1.0});
                }
            }
            terms.push_back({v.nse[zi][t], 1.0});
            rows.push_back(b.add_row(fmt::format("sys/balance/{}/{}", z.id, hour_label(t)), std::move(terms),
                                     RowSense::Eq, z.demand[t]));
        }
    }
    return rows;
}

std::vector<RowRef> emit_transport_constraints(const SystemDescription& sys, const SystemVariableBlock& v,
                                               ModelBuilder& b)
{
    std::vector<RowRef> rows;
    for (std::size_t l = 0; l < sys.lines.size(); ++l)
    {
        const auto& line = sys.lines[l];
        for (std::size_t t = 0; t < b.horizon(); ++t)
        {
            rows.push_back(b.add_row(fmt::format("sys/line/{}/{}", line.id(), hour_label(t)),
                                     {{v.flow_fwd[l][t], 1.0}, {v.flow_bwd[l][t], 1.0}, {v.line_new[l], -1.0}},
                                     RowSense::Le, line.existing_capacity));
        }
    }
    return rows;
}

std::vector<RowRef> emit_thermal_limits(const SystemDescription& sys, const SystemVariableBlock& v, ModelBuilder& b)
{
    std::vector<RowRef> rows;
    for (std::size_t g = 0; g < sys.thermal_resources.size(); ++g)
    {
        const auto& gen = sys.thermal_resources[g];
        for (std::size_t t = 0; t < b.horizon(); ++t)
        {
            rows.push_back(b.add_row(fmt::format("sys/thermal/{}/{}", gen.id, hour_label(t)),
                                     {{v.thermal_gen[g][t], 1.0}, {v.thermal_new[g], -1.0}}, RowSense::Le,
                                     gen.existing_capacity));
        }
    }
    return rows;
}

double deliverable_power_per_mwh(const ColoResource& r)
{
    double k = 0.0;
    if (r.has_dc_storage() && r.symmetric_dc)
        k += r.inverter_efficiency * r.power_to_energy_dc;
    if (r.has_ac_storage() && r.symmetric_ac)
        k += r.power_to_energy_ac;
    return k;
}

RowRef emit_forced_battery(const SystemDescription& sys, const std::vector<ColoVariableBlock>& colo, ModelBuilder& b)
{
    if (!sys.forced_battery_mw)
        throw DataError("forced battery row requested without forced_battery_mw");
    std::vector<Term> terms;
    for (std::size_t i = 0; i < sys.colo_resources.size(); ++i)
    {
        const auto& r = sys.colo_resources[i];
        const auto& v = colo[i];
        if (!r.has_storage())
            continue;
        if (const double k = deliverable_power_per_mwh(r); k > 0.0)
            terms.push_back({v.cap(ComponentKind::StorageEnergy)->built, k});
        if (r.has_dc_storage() && !r.symmetric_dc)
            terms.push_back({v.cap(ComponentKind::DischargeDc)->built, r.inverter_efficiency});
        if (r.has_ac_storage() && !r.symmetric_ac)
            terms.push_back({v.cap(ComponentKind::DischargeAc)->built, 1.0});
    }
    return b.add_row("sys/forced_battery", std::move(terms), RowSense::Eq, *sys.forced_battery_mw);
}

RowRef emit_rps(const SystemDescription& sys, const std::vector<ColoVariableBlock>& colo,
                const SystemVariableBlock& v, ModelBuilder& b)
{
    if (!sys.rps_share)
        throw DataError("rps row requested without rps_share");
    std::vector<Term> terms;
    for (std::size_t i = 0; i < sys.colo_resources.size(); ++i)
    {
        const auto& r = sys.colo_resources[i];
        for (Col c : colo[i].theta_pv)
            terms.push_back({c, r.inverter_efficiency});
        for (Col c : colo[i].theta_wind)
            terms.push_back({c, 1.0});
    }
    for (std::size_t g = 0; g < sys.thermal_resources.size(); ++g)
    {
        if (!sys.thermal_resources[g].qualifies_rps)
            continue;
        for (Col c : v.thermal_gen[g])
            terms.push_back({c, 1.0});
    }
    double demand = 0.0;
    for (const auto& z : sys.zones)
    {
        for (double d : z.demand)
            demand += d;
    }
    return b.add_row("sys/rps", std::move(terms), RowSense::Ge, *sys.rps_share * demand);
}

void emit_system_objective(const SystemDescription& sys, const SystemVariableBlock& v, ModelBuilder& b)
{
    const double w = b.time_weight();
    for (std::size_t g = 0; g < sys.thermal_resources.size(); ++g)
    {
        const auto& gen = sys.thermal_resources[g];
        b.add_cost(v.thermal_new[g], gen.invest_cost, CostCategory::Invest);
        b.add_cost(v.thermal_new[g], gen.fom_cost, CostCategory::Fom);
        for (Col c : v.thermal_gen[g])
            b.add_cost(c, gen.vom_fuel_cost * w, CostCategory::Vom);
    }
    for (const auto& zone : v.nse)
    {
        for (Col c : zone)
            b.add_cost(c, sys.nse_cost * w, CostCategory::Nse);
    }
    for (std::size_t l = 0; l < sys.lines.size(); ++l)
        b.add_cost(v.line_new[l], sys.lines[l].expansion_cost, CostCategory::Invest);
}

}  // namespace coloexp
