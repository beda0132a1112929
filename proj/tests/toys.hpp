#pragma once

#include "coloexp/domain.hpp"

#include <string>
#include <vector>

// Small systems built in code, shared by unit and acceptance tests.
namespace toys
{

using coloexp::ColoResource;
using coloexp::ComponentKind;
using coloexp::SystemDescription;
using coloexp::ThermalResource;

inline ColoResource pv_site(const std::string& id, const std::string& zone, std::vector<double> cf)
{
    ColoResource r;
    r.id = id;
    r.zone = zone;
    r.components.insert(ComponentKind::Grid);
    r.components.insert(ComponentKind::Pv);
    r.components.insert(ComponentKind::Inverter);
    r.inverter_efficiency = 0.96;
    r.param(ComponentKind::Pv) = {0.0, coloexp::kInfinity, 0.0, 34'000.0, 16'000.0, -12.7};
    r.param(ComponentKind::Inverter) = {0.0, coloexp::kInfinity, 0.0, 4'800.0, 2'400.0, 0.0};
    r.param(ComponentKind::Grid) = {0.0, coloexp::kInfinity, 0.0, 5'000.0, 0.0, 0.0};
    r.cf_pv = std::move(cf);
    return r;
}

/// Adds a symmetric DC-coupled battery to a PV site.
inline ColoResource with_dc_storage(ColoResource r)
{
    r.components.insert(ComponentKind::StorageEnergy);
    r.components.insert(ComponentKind::ChargeDc);
    r.components.insert(ComponentKind::DischargeDc);
    r.eta_dc_charge = 0.95;
    r.eta_dc_discharge = 0.95;
    r.param(ComponentKind::StorageEnergy) = {0.0, coloexp::kInfinity, 0.0, 13'700.0, 6'500.0, 0.0};
    return r;
}

inline ColoResource ac_storage_site(const std::string& id, const std::string& zone, double km = 10.0)
{
    ColoResource r;
    r.id = id;
    r.zone = zone;
    r.components.insert(ComponentKind::Grid);
    r.components.insert(ComponentKind::StorageEnergy);
    r.components.insert(ComponentKind::ChargeAc);
    r.components.insert(ComponentKind::DischargeAc);
    r.eta_ac_charge = 0.95;
    r.eta_ac_discharge = 0.95;
    r.interconnection_km = km;
    r.param(ComponentKind::StorageEnergy) = {0.0, coloexp::kInfinity, 0.0, 13'700.0, 6'500.0, 0.0};
    r.param(ComponentKind::Grid) = {0.0, coloexp::kInfinity, 0.0, 150.0 * km, 0.0, 0.0};
    return r;
}

inline ThermalResource gas(const std::string& zone, double existing, double fuel = 60.0)
{
    ThermalResource g;
    g.id = "gas_" + zone;
    g.zone = zone;
    g.existing_capacity = existing;
    g.invest_cost = 90'000.0;
    g.fom_cost = 10'000.0;
    g.vom_fuel_cost = fuel;
    return g;
}

inline SystemDescription one_zone(std::vector<double> demand, double time_weight)
{
    SystemDescription s;
    s.horizon = demand.size();
    s.zones.push_back({"Z", std::move(demand)});
    s.time_weight = time_weight;
    s.nse_cost = 5'000.0;
    return s;
}

inline const std::vector<double> kSixHourDemand = {60.0, 70.0, 90.0, 110.0, 100.0, 80.0};
inline const std::vector<double> kSixHourSolar = {0.0, 0.3, 0.8, 0.9, 0.4, 0.0};

/// One zone, six hours, a PV + DC battery hybrid and gas. Each hour
/// stands for 1460 hours of the year.
inline SystemDescription hybrid_six_hours()
{
    auto s = one_zone(kSixHourDemand, 1460.0);
    auto r = with_dc_storage(pv_site("hyb", "Z", kSixHourSolar));
    r.interconnection_km = 40.0;
    r.param(ComponentKind::Grid).invest_cost = 150.0 * 40.0;
    s.colo_resources.push_back(r);
    s.thermal_resources.push_back(gas("Z", 50.0));
    return s;
}

/// PV site with a free ratio whose grid connection costs `grid_cost`
/// $/MW-yr. PV is capped at 1000 MW and load never saturates, so only the
/// interconnection price decides how much output is clipped.
inline SystemDescription ilr_sweep(double grid_cost)
{
    auto s = one_zone(std::vector<double>(6, 10'000.0), 1460.0);
    auto r = pv_site("pv", "Z", kSixHourSolar);
    r.param(ComponentKind::Pv).max_capacity = 1'000.0;
    r.param(ComponentKind::Pv).invest_cost = 10'000.0;
    r.param(ComponentKind::Pv).fom_cost = 5'000.0;
    r.param(ComponentKind::Grid).invest_cost = grid_cost;
    s.colo_resources.push_back(r);
    s.thermal_resources.push_back(gas("Z", 20'000.0, 20.0));
    return s;
}

/// Hybrid plus standalone storage with a forced storage requirement.
inline SystemDescription forced_storage(double forced_mw)
{
    auto s = hybrid_six_hours();
    s.colo_resources.push_back(ac_storage_site("bat", "Z"));
    s.forced_battery_mw = forced_mw;
    return s;
}

}  // namespace toys
