#include "coloexp/colo_formulation.hpp"

#include "coloexp/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace coloexp
{

namespace
{

using K = ComponentKind;

std::string row_id(const ColoResource& r, std::string_view family, K component, std::string_view t)
{
    return fmt::format("{}/{}/{}/{}", r.id, family, to_string(component), t);
}

std::vector<Col> hourly(const ColoResource& r, std::string_view name, ModelBuilder& b)
{
    std::vector<Col> cols;
    cols.reserve(b.horizon());
    for (std::size_t t = 0; t < b.horizon(); ++t)
        cols.push_back(b.add_variable(fmt::format("{}/{}/{}", r.id, name, hour_label(t))));
    return cols;
}

Col total(const ColoVariableBlock& v, K k)
{
    const auto& c = v.cap(k);
    if (!c)
        throw DataError(fmt::format("resource '{}' has no capacity for {}", v.resource_id, to_string(k)));
    return c->total;
}

void append(std::vector<Term>& terms, const std::vector<Col>& cols, std::size_t t, double coef)
{
    if (!cols.empty())
        terms.push_back({cols[t], coef});
}

void check_ratio(const ColoResource& r, double ratio, const char* field)
{
    if (ratio != kFreeRatio && !(ratio > 0.0))
        throw DataError(fmt::format("resource '{}': {} = {} must be -1 or > 0", r.id, field, ratio));
}

}  // namespace

ColoVariableBlock register_colo_variables(const ColoResource& r, ModelBuilder& b)
{
    ColoVariableBlock v;
    v.resource_id = r.id;
    for (auto k : kAllComponents)
    {
        if (!r.sized(k))
            continue;
        const auto name = to_string(k);
        CapacityVars c;
        c.built = b.add_variable(fmt::format("{}/new/{}", r.id, name));
        c.retired = b.add_variable(fmt::format("{}/retired/{}", r.id, name));
        c.total = b.add_variable(fmt::format("{}/total/{}", r.id, name));
        v.capacity[static_cast<std::size_t>(k)] = c;
    }
    if (r.has(K::Pv))
        v.theta_pv = hourly(r, "theta_pv", b);
    if (r.has(K::Wind))
        v.theta_wind = hourly(r, "theta_wind", b);
    if (r.has_dc_storage())
    {
        v.theta_dc = hourly(r, "theta_dc", b);
        v.pi_dc = hourly(r, "pi_dc", b);
    }
    if (r.has_ac_storage())
    {
        v.theta_ac = hourly(r, "theta_ac", b);
        v.pi_ac = hourly(r, "pi_ac", b);
    }
    if (r.has(K::Grid))
    {
        v.theta_grid = hourly(r, "theta_grid", b);
        v.pi_grid = hourly(r, "pi_grid", b);
    }
    if (r.has_storage())
        v.soc = hourly(r, "soc", b);
    return v;
}

std::vector<RowRef> emit_capacity_constraints(const ColoResource& r, const ColoVariableBlock& v, ModelBuilder& b)
{
    std::vector<RowRef> rows;
    for (auto k : kAllComponents)
    {
        const auto& c = v.cap(k);
        if (!c)
            continue;
        const auto& p = r.param(k);
        rows.push_back(b.add_row(row_id(r, "total", k, "-"), {{c->total, 1.0}, {c->built, -1.0}, {c->retired, 1.0}},
                                 RowSense::Eq, p.existing));
        rows.push_back(b.add_row(row_id(r, "retire", k, "-"), {{c->retired, 1.0}}, RowSense::Le, p.existing));
        if (std::isfinite(p.max_capacity))
            rows.push_back(b.add_row(row_id(r, "maxcap", k, "-"), {{c->total, 1.0}}, RowSense::Le, p.max_capacity));
        if (p.min_capacity > 0.0)
            rows.push_back(b.add_row(row_id(r, "mincap", k, "-"), {{c->total, 1.0}}, RowSense::Ge, p.min_capacity));
    }
    return rows;
}

std::vector<RowRef> emit_ratio_constraints(const ColoResource& r, const ColoVariableBlock& v, ModelBuilder& b)
{
    check_ratio(r, r.ilr_pv, "ilr_pv");
    check_ratio(r, r.ilr_wind, "ilr_wind");
    std::vector<RowRef> rows;
    if (r.has(K::Pv) && r.ilr_pv != kFreeRatio)
    {
        const Col pv = total(v, K::Pv);
        rows.push_back(b.add_row(row_id(r, "ratio_inv", K::Pv, "-"), {{pv, 1.0}, {total(v, K::Inverter), -r.ilr_pv}},
                                 RowSense::Eq, 0.0));
        rows.push_back(b.add_row(row_id(r, "ratio_grid", K::Pv, "-"), {{pv, 1.0}, {total(v, K::Grid), -r.ilr_pv}},
                                 RowSense::Eq, 0.0));
    }
    if (r.has(K::Wind) && r.ilr_wind != kFreeRatio)
    {
        rows.push_back(b.add_row(row_id(r, "ratio_grid", K::Wind, "-"),
                                 {{total(v, K::Wind), 1.0}, {total(v, K::Grid), -r.ilr_wind}}, RowSense::Eq, 0.0));
    }
    return rows;
}

std::vector<RowRef> emit_energy_balance(const ColoResource& r, const ColoVariableBlock& v, ModelBuilder& b)
{
    std::vector<RowRef> rows;
    const double eta = r.inverter_efficiency;
    for (std::size_t t = 0; t < b.horizon(); ++t)
    {
        std::vector<Term> terms;
        append(terms, v.theta_grid, t, 1.0);
        append(terms, v.pi_grid, t, -1.0);
        append(terms, v.theta_wind, t, -1.0);
        append(terms, v.theta_ac, t, -1.0);
        append(terms, v.pi_ac, t, 1.0);
        append(terms, v.theta_pv, t, -eta);
        append(terms, v.theta_dc, t, -eta);
        append(terms, v.pi_dc, t, 1.0 / eta);
        rows.push_back(b.add_row(row_id(r, "balance", K::Grid, hour_label(t)), std::move(terms), RowSense::Eq, 0.0));
    }
    return rows;
}

std::vector<RowRef> emit_export_limits(const ColoResource& r, const ColoVariableBlock& v, ModelBuilder& b)
{
    std::vector<RowRef> rows;
    const double eta = r.inverter_efficiency;
    const Col grid = total(v, K::Grid);
    for (std::size_t t = 0; t < b.horizon(); ++t)
    {
        rows.push_back(b.add_row(row_id(r, "export_grid", K::Grid, hour_label(t)),
                                 {{v.theta_grid[t], 1.0}, {v.pi_grid[t], 1.0}, {grid, -1.0}}, RowSense::Le, 0.0));
    }
    if (!r.has(K::Inverter))
        return rows;
    const Col inv = total(v, K::Inverter);
    for (std::size_t t = 0; t < b.horizon(); ++t)
    {
        std::vector<Term> terms;
        append(terms, v.theta_pv, t, eta);
        append(terms, v.theta_dc, t, eta);
        append(terms, v.pi_dc, t, 1.0 / eta);
        terms.push_back({inv, -1.0});
        rows.push_back(b.add_row(row_id(r, "export_inv", K::Inverter, hour_label(t)), std::move(terms), RowSense::Le,
                                 0.0));
    }
    return rows;
}

std::vector<RowRef> emit_generation_limits(const ColoResource& r, const ColoVariableBlock& v, ModelBuilder& b)
{
    std::vector<RowRef> rows;
    auto emit = [&](K k, const std::vector<Col>& flow, const std::vector<double>& cf) {
        if (flow.empty())
            return;
        if (cf.size() != b.horizon())
            throw DataError(fmt::format("resource '{}': {} capacity factors for {} hours", r.id, cf.size(),
                                        b.horizon()));
        const Col cap = total(v, k);
        for (std::size_t t = 0; t < b.horizon(); ++t)
        {
            rows.push_back(b.add_row(row_id(r, "genmax", k, hour_label(t)), {{flow[t], 1.0}, {cap, -cf[t]}},
                                     RowSense::Le, 0.0));
        }
    };
    emit(K::Pv, v.theta_pv, r.cf_pv);
    emit(K::Wind, v.theta_wind, r.cf_wind);
    return rows;
}

std::vector<RowRef> emit_soc_dynamics(const ColoResource& r, const ColoVariableBlock& v, ModelBuilder& b)
{
    std::vector<RowRef> rows;
    if (v.soc.empty())
        return rows;
    const std::size_t n = b.horizon();
    const Col energy = total(v, K::StorageEnergy);
    for (std::size_t t = 0; t < n; ++t)
    {
        const std::size_t prev = (t + n - 1) % n;
        std::vector<Term> terms{{v.soc[t], 1.0}, {v.soc[prev], -(1.0 - r.self_discharge)}};
        append(terms, v.pi_dc, t, -r.eta_dc_charge);
        append(terms, v.theta_dc, t, 1.0 / r.eta_dc_discharge);
        append(terms, v.pi_ac, t, -r.eta_ac_charge);
        append(terms, v.theta_ac, t, 1.0 / r.eta_ac_discharge);
        rows.push_back(b.add_row(row_id(r, "soc", K::StorageEnergy, hour_label(t)), std::move(terms), RowSense::Eq,
                                 0.0));
    }
    for (std::size_t t = 0; t < n; ++t)
    {
        rows.push_back(b.add_row(row_id(r, "socmax", K::StorageEnergy, hour_label(t)),
                                 {{v.soc[t], 1.0}, {energy, -1.0}}, RowSense::Le, 0.0));
    }
    return rows;
}

std::vector<RowRef> emit_symmetric_storage_limits(const ColoResource& r, const ColoVariableBlock& v, ModelBuilder& b)
{
    std::vector<RowRef> rows;
    if (!r.has_storage())
        return rows;
    const Col energy = total(v, K::StorageEnergy);
    auto emit = [&](std::string_view family, const std::vector<Col>& out, const std::vector<Col>& in, double mu) {
        for (std::size_t t = 0; t < b.horizon(); ++t)
        {
            rows.push_back(b.add_row(row_id(r, family, K::StorageEnergy, hour_label(t)),
                                     {{out[t], 1.0}, {in[t], 1.0}, {energy, -mu}}, RowSense::Le, 0.0));
        }
    };
    if (r.has_dc_storage() && r.symmetric_dc)
        emit("sym_dc", v.theta_dc, v.pi_dc, r.power_to_energy_dc);
    if (r.has_ac_storage() && r.symmetric_ac)
        emit("sym_ac", v.theta_ac, v.pi_ac, r.power_to_energy_ac);
    return rows;
}

std::vector<RowRef> emit_asymmetric_storage_limits(const ColoResource& r, const ColoVariableBlock& v,
                                                   ModelBuilder& b)
{
    std::vector<RowRef> rows;
    auto emit = [&](K k, const std::vector<Col>& flow) {
        const Col cap = total(v, k);
        for (std::size_t t = 0; t < b.horizon(); ++t)
        {
            rows.push_back(
                b.add_row(row_id(r, "asym", k, hour_label(t)), {{flow[t], 1.0}, {cap, -1.0}}, RowSense::Le, 0.0));
        }
    };
    if (r.has_dc_storage() && !r.symmetric_dc)
    {
        emit(K::DischargeDc, v.theta_dc);
        emit(K::ChargeDc, v.pi_dc);
    }
    if (r.has_ac_storage() && !r.symmetric_ac)
    {
        emit(K::DischargeAc, v.theta_ac);
        emit(K::ChargeAc, v.pi_ac);
    }
    return rows;
}

void emit_objective_terms(const ColoResource& r, const ColoVariableBlock& v, ModelBuilder& b)
{
    for (auto k : kAllComponents)
    {
        const auto& c = v.cap(k);
        if (!c)
            continue;
        b.add_cost(c->built, r.param(k).invest_cost, CostCategory::Invest);
        b.add_cost(c->total, r.param(k).fom_cost, CostCategory::Fom);
    }
    auto vom = [&](K k, const std::vector<Col>& flow) {
        const double coef = r.param(k).vom_cost * b.time_weight();
        for (Col c : flow)
            b.add_cost(c, coef, CostCategory::Vom);
    };
    vom(K::Pv, v.theta_pv);
    vom(K::Wind, v.theta_wind);
    vom(K::DischargeDc, v.theta_dc);
    vom(K::ChargeDc, v.pi_dc);
    vom(K::DischargeAc, v.theta_ac);
    vom(K::ChargeAc, v.pi_ac);
}

ColoVariableBlock emit_colo_resource(const ColoResource& r, ModelBuilder& b)
{
    if (!r.has(K::Grid))
        throw DataError(fmt::format("resource '{}' has no grid component", r.id));
    ColoVariableBlock v = register_colo_variables(r, b);
    emit_capacity_constraints(r, v, b);
    emit_ratio_constraints(r, v, b);
    emit_energy_balance(r, v, b);
    emit_export_limits(r, v, b);
    emit_generation_limits(r, v, b);
    emit_soc_dynamics(r, v, b);
    emit_symmetric_storage_limits(r, v, b);
    emit_asymmetric_storage_limits(r, v, b);
    emit_objective_terms(r, v, b);
    return v;
}

}  // namespace coloexp
