#include "coloexp/domain.hpp"

#include "coloexp/csv.hpp"
#include "coloexp/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

namespace coloexp
{

namespace
{

constexpr std::array<std::string_view, kComponentCount> kComponentNames = {
    "grid", "pv", "wind", "storage_energy", "inverter", "charge_dc", "discharge_dc", "charge_ac", "discharge_ac",
};

struct ScalarField
{
    std::string_view column;
    double ColoResource::*member;
};

constexpr std::array<ScalarField, 11> kScalarFields = {{
    {"inverter_efficiency", &ColoResource::inverter_efficiency},
    {"eta_dc_charge", &ColoResource::eta_dc_charge},
    {"eta_dc_discharge", &ColoResource::eta_dc_discharge},
    {"eta_ac_charge", &ColoResource::eta_ac_charge},
    {"eta_ac_discharge", &ColoResource::eta_ac_discharge},
    {"self_discharge", &ColoResource::self_discharge},
    {"power_to_energy_dc", &ColoResource::power_to_energy_dc},
    {"power_to_energy_ac", &ColoResource::power_to_energy_ac},
    {"ilr_pv", &ColoResource::ilr_pv},
    {"ilr_wind", &ColoResource::ilr_wind},
    {"interconnection_km", &ColoResource::interconnection_km},
}};

std::string component_column(ComponentKind k, std::string_view field)
{
    return fmt::format("{}_{}", to_string(k), field);
}

// Shortest text that parses back to the same double.
std::string exact(double v)
{
    if (std::isinf(v))
        return "";
    return fmt::format("{}", v);
}

double non_negative(const csv::Table& table, const csv::Record& rec, std::string_view column, double fallback)
{
    const double v = table.number_or(rec, column, fallback);
    if (v < 0.0)
        table.fail(rec, fmt::format("negative {}", column));
    return v;
}

double capacity_limit(const csv::Table& table, const csv::Record& rec, std::string_view column)
{
    const auto v = table.optional_number(rec, column);
    if (!v)
        return kInfinity;
    if (*v < 0.0)
        table.fail(rec, fmt::format("negative {}", column));
    return *v;
}

std::size_t hour_index(const csv::Table& table, const csv::Record& rec)
{
    const long t = table.integer(rec, "t");
    if (t < 1)
        table.fail(rec, "hour index t must be >= 1");
    return static_cast<std::size_t>(t - 1);
}

/// Collects hourly values keyed by entity and checks every entity covers
/// hours 1..T exactly once.
class SeriesCollector
{
public:
    explicit SeriesCollector(const csv::Table& table) : table_(table) {}

    void add(const csv::Record& rec, const std::string& key, std::size_t t, double v)
    {
        auto& s = series_[key];
        if (s.size() <= t)
            s.resize(t + 1, std::nullopt);
        if (s[t])
            table_.fail(rec, fmt::format("duplicate hour {} for '{}'", t + 1, key));
        s[t] = v;
        last_line_[key] = rec.line;
    }

    [[nodiscard]] std::size_t max_length() const
    {
        std::size_t n = 0;
        for (const auto& [_, s] : series_)
            n = std::max(n, s.size());
        return n;
    }

    [[nodiscard]] bool contains(const std::string& key) const { return series_.count(key) != 0; }

    std::vector<double> take(const std::string& key, std::size_t horizon) const
    {
        const auto it = series_.find(key);
        std::size_t have = 0;
        std::vector<double> out;
        if (it != series_.end())
        {
            for (const auto& v : it->second)
                have += v.has_value() ? 1 : 0;
            if (it->second.size() == horizon && have == horizon)
            {
                for (const auto& v : it->second)
                    out.push_back(*v);
                return out;
            }
        }
        const std::size_t line = it == series_.end() ? 0 : last_line_.at(key);
        throw DataError(fmt::format("{}:{}: series for '{}' has {} of {} hours", table_.source(), line, key, have,
                                    horizon));
    }

    [[nodiscard]] std::vector<std::string> keys() const
    {
        std::vector<std::string> out;
        for (const auto& [k, _] : series_)
            out.push_back(k);
        return out;
    }

private:
    const csv::Table& table_;
    std::map<std::string, std::vector<std::optional<double>>> series_;
    std::map<std::string, std::size_t> last_line_;
};

csv::Table read_table(const std::filesystem::path& dir, const char* name)
{
    return csv::Table::read(dir / name);
}

std::optional<csv::Table> read_optional(const std::filesystem::path& dir, const char* name)
{
    if (!std::filesystem::exists(dir / name))
        return std::nullopt;
    return csv::Table::read(dir / name);
}

ComponentSet parse_components(const csv::Table& table, const csv::Record& rec)
{
    ComponentSet set;
    const std::string text = table.cell(rec, "components");
    std::size_t start = 0;
    while (start <= text.size())
    {
        const std::size_t end = std::min(text.find(';', start), text.size());
        const std::string name = csv::trim(std::string_view(text).substr(start, end - start));
        if (!name.empty())
        {
            const auto kind = component_from_string(name);
            if (!kind)
                table.fail(rec, fmt::format("unknown component '{}'", name));
            set.insert(*kind);
        }
        start = end + 1;
    }
    return set;
}

ColoResource parse_colo(const csv::Table& table, const csv::Record& rec)
{
    ColoResource r;
    r.id = table.cell(rec, "id");
    r.zone = table.cell(rec, "zone");
    if (r.id.empty())
        table.fail(rec, "empty id");
    r.components = parse_components(table, rec);
    for (auto k : kAllComponents)
    {
        auto& p = r.param(k);
        p.existing = non_negative(table, rec, component_column(k, "existing"), 0.0);
        p.max_capacity = capacity_limit(table, rec, component_column(k, "max"));
        p.min_capacity = non_negative(table, rec, component_column(k, "min"), 0.0);
        p.invest_cost = non_negative(table, rec, component_column(k, "invest"), 0.0);
        p.fom_cost = non_negative(table, rec, component_column(k, "fom"), 0.0);
        p.vom_cost = table.number_or(rec, component_column(k, "vom"), 0.0);
    }
    for (const auto& f : kScalarFields)
    {
        const double fallback = r.*(f.member);
        const bool sentinel_allowed = f.column == "ilr_pv" || f.column == "ilr_wind";
        r.*(f.member) = sentinel_allowed ? table.number_or(rec, f.column, fallback)
                                         : non_negative(table, rec, f.column, fallback);
    }
    r.symmetric_dc = table.boolean_or(rec, "symmetric_dc", true);
    r.symmetric_ac = table.boolean_or(rec, "symmetric_ac", true);
    return r;
}

void require_zone(const std::set<std::string>& zones, const csv::Table& table, const csv::Record& rec,
                  const std::string& zone)
{
    if (zones.count(zone) == 0)
        table.fail(rec, fmt::format("unknown zone '{}'", zone));
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError(fmt::format("cannot write {}", path.string()));
    out << text;
    if (!out)
        throw IoError(fmt::format("write failed: {}", path.string()));
}

class Checker
{
public:
    void check(bool ok, std::string entity, std::string field, std::string rule)
    {
        if (!ok)
            out.push_back({std::move(entity), std::move(field), std::move(rule)});
    }
    std::vector<Violation> out;
};

bool fraction_open_closed(double v) { return v > 0.0 && v <= 1.0; }

void validate_colo(const ColoResource& r, const SystemDescription& sys, Checker& c)
{
    const std::string e = "colo_resource:" + r.id;
    c.check(!r.id.empty(), e, "id", "must be non-empty");
    c.check(sys.find_zone(r.zone) != nullptr, e, "zone", "references unknown zone '" + r.zone + "'");
    c.check(r.has(ComponentKind::Grid), e, "components", "must include grid");

    for (auto k : kAllComponents)
    {
        const auto& p = r.param(k);
        const std::string name(to_string(k));
        c.check(p.existing >= 0.0, e, name + "_existing", "must be >= 0");
        c.check(p.min_capacity >= 0.0, e, name + "_min", "must be >= 0");
        c.check(p.max_capacity >= 0.0, e, name + "_max", "must be >= 0");
        c.check(p.invest_cost >= 0.0, e, name + "_invest", "must be >= 0");
        c.check(p.fom_cost >= 0.0, e, name + "_fom", "must be >= 0");
        c.check(std::isfinite(p.vom_cost), e, name + "_vom", "must be finite");
        c.check(!(p.min_capacity > p.max_capacity), e, name + "_min", "exceeds " + name + "_max");
    }

    c.check(fraction_open_closed(r.inverter_efficiency), e, "inverter_efficiency", "out of (0,1]");
    c.check(fraction_open_closed(r.eta_dc_charge), e, "eta_dc_charge", "out of (0,1]");
    c.check(fraction_open_closed(r.eta_dc_discharge), e, "eta_dc_discharge", "out of (0,1]");
    c.check(fraction_open_closed(r.eta_ac_charge), e, "eta_ac_charge", "out of (0,1]");
    c.check(fraction_open_closed(r.eta_ac_discharge), e, "eta_ac_discharge", "out of (0,1]");
    c.check(r.self_discharge >= 0.0 && r.self_discharge < 1.0, e, "self_discharge", "out of [0,1)");
    c.check(r.interconnection_km >= 0.0, e, "interconnection_km", "must be >= 0");
    c.check(r.ilr_pv == kFreeRatio || r.ilr_pv > 0.0, e, "ilr_pv", "must be -1 or > 0");
    c.check(r.ilr_wind == kFreeRatio || r.ilr_wind > 0.0, e, "ilr_wind", "must be -1 or > 0");

    const bool dc_pair = r.has(ComponentKind::ChargeDc) && r.has(ComponentKind::DischargeDc);
    const bool ac_pair = r.has(ComponentKind::ChargeAc) && r.has(ComponentKind::DischargeAc);
    if (r.has_storage())
        c.check(dc_pair || ac_pair, e, "components",
                "storage_energy requires charge_dc+discharge_dc or charge_ac+discharge_ac");
    c.check(r.has(ComponentKind::ChargeDc) == r.has(ComponentKind::DischargeDc), e, "components",
            "charge_dc and discharge_dc must appear together");
    c.check(r.has(ComponentKind::ChargeAc) == r.has(ComponentKind::DischargeAc), e, "components",
            "charge_ac and discharge_ac must appear together");
    c.check(!(dc_pair || ac_pair) || r.has_storage(), e, "components", "charge/discharge require storage_energy");
    if (r.has(ComponentKind::Pv) || dc_pair)
        c.check(r.has(ComponentKind::Inverter), e, "components", "pv or dc storage requires inverter");
    if (r.has_dc_storage() && r.symmetric_dc)
        c.check(r.power_to_energy_dc > 0.0, e, "power_to_energy_dc", "must be > 0 for symmetric dc storage");
    if (r.has_ac_storage() && r.symmetric_ac)
        c.check(r.power_to_energy_ac > 0.0, e, "power_to_energy_ac", "must be > 0 for symmetric ac storage");

    auto check_cf = [&](bool present, const std::vector<double>& cf, const char* field) {
        if (!present)
            return;
        c.check(cf.size() == sys.horizon, e, field, fmt::format("length {} differs from T={}", cf.size(), sys.horizon));
        const bool in_range = std::all_of(cf.begin(), cf.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
        c.check(in_range, e, field, "values out of [0,1]");
    };
    check_cf(r.has(ComponentKind::Pv), r.cf_pv, "cf_pv");
    check_cf(r.has(ComponentKind::Wind), r.cf_wind, "cf_wind");
}

}  // namespace

std::string_view to_string(ComponentKind kind)
{
    return kComponentNames[static_cast<std::size_t>(kind)];
}

std::optional<ComponentKind> component_from_string(std::string_view name)
{
    for (std::size_t i = 0; i < kComponentCount; ++i)
    {
        if (kComponentNames[i] == name)
            return kAllComponents[i];
    }
    return std::nullopt;
}

std::size_t ComponentSet::size() const
{
    return members().size();
}

std::vector<ComponentKind> ComponentSet::members() const
{
    std::vector<ComponentKind> out;
    for (auto k : kAllComponents)
    {
        if (contains(k))
            out.push_back(k);
    }
    return out;
}

bool ColoResource::sized(ComponentKind k) const
{
    if (!has(k))
        return false;
    switch (k)
    {
    case ComponentKind::ChargeDc:
    case ComponentKind::DischargeDc:
        return has_dc_storage() && !symmetric_dc;
    case ComponentKind::ChargeAc:
    case ComponentKind::DischargeAc:
        return has_ac_storage() && !symmetric_ac;
    default:
        return true;
    }
}

const Zone* SystemDescription::find_zone(std::string_view id) const
{
    for (const auto& z : zones)
    {
        if (z.id == id)
            return &z;
    }
    return nullptr;
}

const ColoResource* SystemDescription::find_colo(std::string_view id) const
{
    for (const auto& r : colo_resources)
    {
        if (r.id == id)
            return &r;
    }
    return nullptr;
}

std::vector<Violation> validate(const SystemDescription& sys)
{
    Checker c;
    c.check(sys.horizon >= 1, "system", "horizon", "must be >= 1");
    c.check(sys.nse_cost > 0.0, "policy", "nse_cost", "must be > 0");
    c.check(sys.time_weight > 0.0, "policy", "time_weight", "must be > 0");
    if (sys.forced_battery_mw)
        c.check(*sys.forced_battery_mw >= 0.0, "policy", "forced_battery_mw", "must be >= 0");
    if (sys.rps_share)
        c.check(*sys.rps_share >= 0.0 && *sys.rps_share <= 1.0, "policy", "rps_share", "out of [0,1]");

    std::set<std::string> seen;
    for (const auto& z : sys.zones)
    {
        const std::string e = "zone:" + z.id;
        c.check(!z.id.empty(), e, "id", "must be non-empty");
        c.check(seen.insert(z.id).second, e, "id", "duplicate");
        c.check(z.demand.size() == sys.horizon, e, "demand",
                fmt::format("length {} differs from T={}", z.demand.size(), sys.horizon));
        c.check(std::all_of(z.demand.begin(), z.demand.end(), [](double v) { return v >= 0.0; }), e, "demand",
                "must be >= 0");
    }

    seen.clear();
    for (const auto& l : sys.lines)
    {
        const std::string e = "line:" + l.id();
        c.check(l.from_zone != l.to_zone, e, "to_zone", "must differ from from_zone");
        c.check(sys.find_zone(l.from_zone) != nullptr, e, "from_zone", "references unknown zone");
        c.check(sys.find_zone(l.to_zone) != nullptr, e, "to_zone", "references unknown zone");
        c.check(l.existing_capacity >= 0.0, e, "existing_capacity", "must be >= 0");
        c.check(l.max_expansion >= 0.0, e, "max_expansion", "must be >= 0");
        c.check(l.expansion_cost >= 0.0, e, "expansion_cost", "must be >= 0");
        c.check(l.length_km >= 0.0, e, "length", "must be >= 0");
        c.check(seen.insert(l.id()).second, e, "id", "duplicate");
    }

    seen.clear();
    for (const auto& r : sys.colo_resources)
    {
        c.check(seen.insert(r.id).second, "colo_resource:" + r.id, "id", "duplicate");
        validate_colo(r, sys, c);
    }

    for (const auto& g : sys.thermal_resources)
    {
        const std::string e = "thermal:" + g.id;
        c.check(seen.insert(g.id).second, e, "id", "duplicate");
        c.check(sys.find_zone(g.zone) != nullptr, e, "zone", "references unknown zone '" + g.zone + "'");
        c.check(g.existing_capacity >= 0.0, e, "existing_capacity", "must be >= 0");
        c.check(g.max_new >= 0.0, e, "max_new", "must be >= 0");
        c.check(g.invest_cost >= 0.0, e, "invest_cost", "must be >= 0");
        c.check(g.fom_cost >= 0.0, e, "fom_cost", "must be >= 0");
        c.check(g.vom_fuel_cost >= 0.0, e, "vom_plus_fuel_cost", "must be >= 0");
    }
    return std::move(c.out);
}

SystemDescription read_system(const std::filesystem::path& dir)
{
    SystemDescription sys;

    const auto zones = read_table(dir, "zones.csv");
    (void)zones.require_column("id");
    std::set<std::string> zone_ids;
    for (const auto& rec : zones.records())
    {
        const std::string id = zones.cell(rec, "id");
        if (id.empty())
            zones.fail(rec, "empty id");
        if (!zone_ids.insert(id).second)
            zones.fail(rec, fmt::format("duplicate zone '{}'", id));
        sys.zones.push_back({id, {}});
    }

    const auto demand = read_table(dir, "demand.csv");
    for (const char* col : {"zone", "t", "mwh"})
        (void)demand.require_column(col);
    SeriesCollector demand_series(demand);
    for (const auto& rec : demand.records())
    {
        const std::string z = demand.cell(rec, "zone");
        require_zone(zone_ids, demand, rec, z);
        demand_series.add(rec, z, hour_index(demand, rec), non_negative(demand, rec, "mwh", 0.0));
    }
    sys.horizon = demand_series.max_length();
    if (sys.horizon == 0)
        throw DataError(fmt::format("{}: no demand rows", demand.source()));
    for (auto& z : sys.zones)
        z.demand = demand_series.take(z.id, sys.horizon);

    const auto colo = read_table(dir, "colo_resources.csv");
    for (const char* col : {"id", "zone", "components"})
        (void)colo.require_column(col);
    std::set<std::string> colo_ids;
    for (const auto& rec : colo.records())
    {
        auto r = parse_colo(colo, rec);
        require_zone(zone_ids, colo, rec, r.zone);
        if (!colo_ids.insert(r.id).second)
            colo.fail(rec, fmt::format("duplicate resource '{}'", r.id));
        sys.colo_resources.push_back(std::move(r));
    }

    const auto cf = read_table(dir, "colo_capacity_factors.csv");
    for (const char* col : {"resource", "t"})
        (void)cf.require_column(col);
    SeriesCollector pv(cf);
    SeriesCollector wind(cf);
    for (const auto& rec : cf.records())
    {
        const std::string id = cf.cell(rec, "resource");
        if (colo_ids.count(id) == 0)
            cf.fail(rec, fmt::format("unknown resource '{}'", id));
        const std::size_t t = hour_index(cf, rec);
        if (const auto v = cf.optional_number(rec, "cf_pv"))
        {
            if (*v < 0.0)
                cf.fail(rec, "negative cf_pv");
            pv.add(rec, id, t, *v);
        }
        if (const auto v = cf.optional_number(rec, "cf_wind"))
        {
            if (*v < 0.0)
                cf.fail(rec, "negative cf_wind");
            wind.add(rec, id, t, *v);
        }
    }
    for (auto& r : sys.colo_resources)
    {
        if (r.has(ComponentKind::Pv) || pv.contains(r.id))
            r.cf_pv = pv.take(r.id, sys.horizon);
        if (r.has(ComponentKind::Wind) || wind.contains(r.id))
            r.cf_wind = wind.take(r.id, sys.horizon);
    }

    if (const auto lines = read_optional(dir, "lines.csv"))
    {
        for (const char* col : {"from", "to"})
            (void)lines->require_column(col);
        for (const auto& rec : lines->records())
        {
            TransportLine l;
            l.from_zone = lines->cell(rec, "from");
            l.to_zone = lines->cell(rec, "to");
            require_zone(zone_ids, *lines, rec, l.from_zone);
            require_zone(zone_ids, *lines, rec, l.to_zone);
            l.existing_capacity = non_negative(*lines, rec, "existing_mw", 0.0);
            l.max_expansion = capacity_limit(*lines, rec, "max_new_mw");
            l.expansion_cost = non_negative(*lines, rec, "cost_per_mw_yr", 0.0);
            l.length_km = non_negative(*lines, rec, "km", 0.0);
            sys.lines.push_back(std::move(l));
        }
    }

    if (const auto thermal = read_optional(dir, "thermal.csv"))
    {
        for (const char* col : {"id", "zone"})
            (void)thermal->require_column(col);
        for (const auto& rec : thermal->records())
        {
            ThermalResource g;
            g.id = thermal->cell(rec, "id");
            g.zone = thermal->cell(rec, "zone");
            require_zone(zone_ids, *thermal, rec, g.zone);
            g.existing_capacity = non_negative(*thermal, rec, "existing_mw", 0.0);
            g.max_new = capacity_limit(*thermal, rec, "max_new_mw");
            g.invest_cost = non_negative(*thermal, rec, "invest_per_mw_yr", 0.0);
            g.fom_cost = non_negative(*thermal, rec, "fom_per_mw_yr", 0.0);
            g.vom_fuel_cost = non_negative(*thermal, rec, "vom_fuel_per_mwh", 0.0);
            g.qualifies_rps = thermal->boolean_or(rec, "qualifies_rps", false);
            sys.thermal_resources.push_back(std::move(g));
        }
    }

    if (const auto policy = read_optional(dir, "policy.csv"))
    {
        for (const char* col : {"key", "value"})
            (void)policy->require_column(col);
        for (const auto& rec : policy->records())
        {
            const std::string key = policy->cell(rec, "key");
            if (policy->cell(rec, "value").empty())
                continue;
            const double v = policy->number(rec, "value");
            if (key == "forced_battery_mw")
                sys.forced_battery_mw = v;
            else if (key == "rps_share")
                sys.rps_share = v;
            else if (key == "nse_cost")
                sys.nse_cost = v;
            else if (key == "time_weight")
                sys.time_weight = v;
            else
                policy->fail(rec, fmt::format("unknown policy key '{}'", key));
            if (v < 0.0)
                policy->fail(rec, fmt::format("negative {}", key));
        }
    }
    return sys;
}

SystemDescription load_system(const std::filesystem::path& dir)
{
    SystemDescription sys = read_system(dir);
    const auto violations = validate(sys);
    if (!violations.empty())
    {
        std::string msg = fmt::format("{}: {} violation(s)", dir.string(), violations.size());
        for (const auto& v : violations)
            msg += "\n  " + v.to_string();
        throw DataError(msg);
    }
    return sys;
}

void write_system(const SystemDescription& sys, const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError(fmt::format("cannot create {}: {}", dir.string(), ec.message()));

    std::string zones = "id\n";
    std::string demand = "zone,t,mwh\n";
    for (const auto& z : sys.zones)
    {
        zones += csv::escape(z.id) + "\n";
        for (std::size_t t = 0; t < z.demand.size(); ++t)
            demand += fmt::format("{},{},{}\n", csv::escape(z.id), t + 1, exact(z.demand[t]));
    }
    write_file(dir / "zones.csv", zones);
    write_file(dir / "demand.csv", demand);

    std::string colo = "id,zone,components";
    for (auto k : kAllComponents)
    {
        for (const char* f : {"existing", "max", "min", "invest", "fom", "vom"})
            colo += "," + component_column(k, f);
    }
    for (const auto& f : kScalarFields)
        colo += fmt::format(",{}", f.column);
    colo += ",symmetric_dc,symmetric_ac\n";
    std::string cf = "resource,t,cf_pv,cf_wind\n";
    for (const auto& r : sys.colo_resources)
    {
        std::string comps;
        for (auto k : r.components.members())
            comps += (comps.empty() ? "" : ";") + std::string(to_string(k));
        colo += fmt::format("{},{},{}", csv::escape(r.id), csv::escape(r.zone), comps);
        for (auto k : kAllComponents)
        {
            const auto& p = r.param(k);
            colo += fmt::format(",{},{},{},{},{},{}", exact(p.existing), exact(p.max_capacity), exact(p.min_capacity),
                                exact(p.invest_cost), exact(p.fom_cost), exact(p.vom_cost));
        }
        for (const auto& f : kScalarFields)
            colo += "," + exact(r.*(f.member));
        colo += fmt::format(",{},{}\n", r.symmetric_dc ? "true" : "false", r.symmetric_ac ? "true" : "false");

        const std::size_t n = std::max(r.cf_pv.size(), r.cf_wind.size());
        for (std::size_t t = 0; t < n; ++t)
        {
            cf += fmt::format("{},{},{},{}\n", csv::escape(r.id), t + 1, t < r.cf_pv.size() ? exact(r.cf_pv[t]) : "",
                              t < r.cf_wind.size() ? exact(r.cf_wind[t]) : "");
        }
    }
    write_file(dir / "colo_resources.csv", colo);
    write_file(dir / "colo_capacity_factors.csv", cf);

    std::string lines = "from,to,existing_mw,max_new_mw,cost_per_mw_yr,km\n";
    for (const auto& l : sys.lines)
    {
        lines += fmt::format("{},{},{},{},{},{}\n", csv::escape(l.from_zone), csv::escape(l.to_zone),
                             exact(l.existing_capacity), exact(l.max_expansion), exact(l.expansion_cost),
                             exact(l.length_km));
    }
    write_file(dir / "lines.csv", lines);

    std::string thermal =
        "id,zone,existing_mw,max_new_mw,invest_per_mw_yr,fom_per_mw_yr,vom_fuel_per_mwh,qualifies_rps\n";
    for (const auto& g : sys.thermal_resources)
    {
        thermal += fmt::format("{},{},{},{},{},{},{},{}\n", csv::escape(g.id), csv::escape(g.zone),
                               exact(g.existing_capacity), exact(g.max_new), exact(g.invest_cost), exact(g.fom_cost),
                               exact(g.vom_fuel_cost), g.qualifies_rps ? "true" : "false");
    }
    write_file(dir / "thermal.csv", thermal);

    std::string policy = "key,value\n";
    if (sys.forced_battery_mw)
        policy += "forced_battery_mw," + exact(*sys.forced_battery_mw) + "\n";
    if (sys.rps_share)
        policy += "rps_share," + exact(*sys.rps_share) + "\n";
    policy += "nse_cost," + exact(sys.nse_cost) + "\n";
    policy += "time_weight," + exact(sys.time_weight) + "\n";
    write_file(dir / "policy.csv", policy);
}

}  // namespace coloexp
