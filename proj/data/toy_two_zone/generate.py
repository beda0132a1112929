"""Writes the two-zone, 24-hour toy system next to this file.

N is the load zone, S holds most of the existing gas. The S-N line is
built for the evening peak in N, so storage in N can stand in for it.
Annualized cost tables come from `coloexp costs data/costs --out <here>`.
"""

import math
from pathlib import Path

HERE = Path(__file__).resolve().parent
T = 24


def solar(peak, t):
    h = t - 0.5
    if h < 6 or h > 19:
        return 0.0
    return round(peak * math.sin(math.pi * (h - 6) / 13), 3)


def wind(t):
    return round(0.45 + 0.25 * math.cos(2 * math.pi * (t - 3) / 24) + 0.05 * math.sin(2 * math.pi * t / 7), 3)


def load(t):
    day = math.sin(math.pi * (t - 7) / 16) if 7 <= t <= 23 else 0.0
    return 0.75 + 0.2 * day + 0.4 * math.exp(-(((t - 19) / 2.5) ** 2))


def write(name, text):
    (HERE / name).write_text(text)


def main():
    peak = max(load(t) for t in range(1, T + 1))
    write("zones.csv", "id\nN\nS\n")
    demand = ["zone,t,mwh"]
    for zone, zone_peak in (("N", 100000), ("S", 50000)):
        demand += [f"{zone},{t},{round(zone_peak * load(t) / peak, 1)}" for t in range(1, T + 1)]
    write("demand.csv", "\n".join(demand) + "\n")

    write(
        "colo_resources.csv",
        "id,zone,components,pv_max,wind_max,inverter_efficiency,eta_dc_charge,eta_dc_discharge,"
        "eta_ac_charge,eta_ac_discharge,self_discharge,power_to_energy_dc,power_to_energy_ac,"
        "symmetric_dc,symmetric_ac,interconnection_km\n"
        "s_solar,S,grid;pv;inverter;storage_energy;charge_dc;discharge_dc,200000,,0.96,0.95,0.95,,,0,0.25,,true,,60\n"
        "s_wind,S,grid;wind;storage_energy;charge_ac;discharge_ac,,30000,,,,0.95,0.95,0,,0.25,,true,90\n"
        "n_solar,N,grid;pv;inverter;storage_energy;charge_dc;discharge_dc,200000,,0.96,0.95,0.95,,,0,0.25,,true,,25\n"
        "n_storage,N,grid;storage_energy;charge_ac;discharge_ac,,,,,,0.95,0.95,0,,0.25,,true,120\n",
    )
    cf = ["resource,t,cf_pv,cf_wind"]
    for t in range(1, T + 1):
        cf += [f"s_solar,{t},{solar(0.92, t)},", f"s_wind,{t},,{wind(t)}", f"n_solar,{t},{solar(0.9, t)},", f"n_storage,{t},,"]
    write("colo_capacity_factors.csv", "\n".join(cf) + "\n")

    write("lines.csv", "from,to,existing_mw,max_new_mw,cost_per_mw_yr,km\nS,N,10000,80000,30000,600\n")
    write(
        "thermal.csv",
        "id,zone,existing_mw,max_new_mw,invest_per_mw_yr,fom_per_mw_yr,vom_fuel_per_mwh,qualifies_rps\n"
        "gas_n,N,60000,,95000,12000,30,false\n"
        "gas_s,S,90000,,90000,12000,30,false\n",
    )
    write("policy.csv", "key,value\nnse_cost,10000\ntime_weight,365\n")


if __name__ == "__main__":
    main()
