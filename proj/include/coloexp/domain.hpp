#pragma once

#include "coloexp/lp.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coloexp
{

/// Components of a co-located site. Capacities are MW except
/// StorageEnergy (MWh).
enum class ComponentKind : std::uint8_t
{
    Grid,
    Pv,
    Wind,
    StorageEnergy,
    Inverter,
    ChargeDc,
    DischargeDc,
    ChargeAc,
    DischargeAc,
};

inline constexpr std::size_t kComponentCount = 9;

inline constexpr std::array<ComponentKind, kComponentCount> kAllComponents = {
    ComponentKind::Grid,     ComponentKind::Pv,          ComponentKind::Wind,
    ComponentKind::StorageEnergy, ComponentKind::Inverter, ComponentKind::ChargeDc,
    ComponentKind::DischargeDc, ComponentKind::ChargeAc, ComponentKind::DischargeAc,
};

std::string_view to_string(ComponentKind kind);
std::optional<ComponentKind> component_from_string(std::string_view name);

/// Set of present components as a bit mask.
class ComponentSet
{
public:
    ComponentSet() = default;
    ComponentSet(std::initializer_list<ComponentKind> kinds)
    {
        for (auto k : kinds)
            insert(k);
    }

    void insert(ComponentKind k) { bits_ |= bit(k); }
    void erase(ComponentKind k) { bits_ &= static_cast<std::uint16_t>(~bit(k)); }
    [[nodiscard]] bool contains(ComponentKind k) const { return (bits_ & bit(k)) != 0; }
    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] std::vector<ComponentKind> members() const;

    friend bool operator==(ComponentSet, ComponentSet) = default;

private:
    static std::uint16_t bit(ComponentKind k) { return static_cast<std::uint16_t>(1u << static_cast<unsigned>(k)); }
    std::uint16_t bits_ = 0;
};

/// Per-component capacity limits and costs. Units follow the component:
/// MW and $/MW-yr, or MWh and $/MWh-yr for storage energy. VOM is $/MWh
/// on the flow the component governs and may be negative (production
/// credits).
struct ComponentParams
{
    double existing = 0.0;
    double max_capacity = kInfinity;
    double min_capacity = 0.0;
    double invest_cost = 0.0;
    double fom_cost = 0.0;
    double vom_cost = 0.0;

    friend bool operator==(const ComponentParams&, const ComponentParams&) = default;
};

/// Ratio sentinel: the VRE-to-interconnection ratio is left free.
inline constexpr double kFreeRatio = -1.0;

/// One hybrid site behind a single interconnection point. A site with only
/// pv or wind (and grid, inverter) is a standalone VRE resource; one with
/// only storage, inverter and grid is standalone storage.
struct ColoResource
{
    std::string id;
    std::string zone;
    ComponentSet components;
    std::array<ComponentParams, kComponentCount> params{};

    double inverter_efficiency = 1.0;
    double eta_dc_charge = 1.0;
    double eta_dc_discharge = 1.0;
    double eta_ac_charge = 1.0;
    double eta_ac_discharge = 1.0;
    double self_discharge = 0.0;  // fraction of stored energy lost per hour
    double power_to_energy_dc = 0.25;  // 1/h
    double power_to_energy_ac = 0.25;
    double ilr_pv = kFreeRatio;
    double ilr_wind = kFreeRatio;
    double interconnection_km = 0.0;
    // Symmetric paths cap charge + discharge by power_to_energy * energy;
    // asymmetric paths size charge and discharge capacities separately.
    bool symmetric_dc = true;
    bool symmetric_ac = true;

    std::vector<double> cf_pv;
    std::vector<double> cf_wind;

    [[nodiscard]] bool has(ComponentKind k) const { return components.contains(k); }
    [[nodiscard]] ComponentParams& param(ComponentKind k) { return params[static_cast<std::size_t>(k)]; }
    [[nodiscard]] const ComponentParams& param(ComponentKind k) const { return params[static_cast<std::size_t>(k)]; }

    [[nodiscard]] bool has_storage() const { return has(ComponentKind::StorageEnergy); }
    [[nodiscard]] bool has_dc_storage() const
    {
        return has_storage() && has(ComponentKind::ChargeDc) && has(ComponentKind::DischargeDc);
    }
    [[nodiscard]] bool has_ac_storage() const
    {
        return has_storage() && has(ComponentKind::ChargeAc) && has(ComponentKind::DischargeAc);
    }
    [[nodiscard]] bool is_vre() const { return has(ComponentKind::Pv) || has(ComponentKind::Wind); }

    /// Components that carry capacity decision variables: all present ones
    /// except charge/discharge on symmetric storage paths.
    [[nodiscard]] bool sized(ComponentKind k) const;

    friend bool operator==(const ColoResource&, const ColoResource&) = default;
};

struct Zone
{
    std::string id;
    std::vector<double> demand;  // MWh per hour

    friend bool operator==(const Zone&, const Zone&) = default;
};

struct TransportLine
{
    std::string from_zone;
    std::string to_zone;
    double existing_capacity = 0.0;  // MW
    double max_expansion = kInfinity;  // MW
    double expansion_cost = 0.0;  // $/MW-yr
    double length_km = 0.0;

    [[nodiscard]] std::string id() const { return from_zone + "-" + to_zone; }

    friend bool operator==(const TransportLine&, const TransportLine&) = default;
};

struct ThermalResource
{
    std::string id;
    std::string zone;
    double existing_capacity = 0.0;  // MW
    double max_new = kInfinity;      // MW
    double invest_cost = 0.0;        // $/MW-yr
    double fom_cost = 0.0;           // $/MW-yr, charged on new capacity
    double vom_fuel_cost = 0.0;      // $/MWh
    bool qualifies_rps = false;

    friend bool operator==(const ThermalResource&, const ThermalResource&) = default;
};

inline constexpr double kDefaultNseCost = 50'000.0;

/// Complete optimisation input. Immutable once loaded.
struct SystemDescription
{
    std::vector<Zone> zones;
    std::vector<TransportLine> lines;
    std::vector<ColoResource> colo_resources;
    std::vector<ThermalResource> thermal_resources;
    std::size_t horizon = 0;  // hours, T
    std::optional<double> forced_battery_mw;
    std::optional<double> rps_share;
    double nse_cost = kDefaultNseCost;  // $/MWh
    // Multiplies every hourly cost so a short horizon stands in for a year.
    double time_weight = 1.0;

    [[nodiscard]] const Zone* find_zone(std::string_view id) const;
    [[nodiscard]] const ColoResource* find_colo(std::string_view id) const;

    friend bool operator==(const SystemDescription&, const SystemDescription&) = default;
};

struct Violation
{
    std::string entity;
    std::string field;
    std::string rule;

    [[nodiscard]] std::string to_string() const { return entity + ": " + field + " " + rule; }
};

/// Every broken type invariant, one or more entries each. Empty when the
/// description is consistent.
std::vector<Violation> validate(const SystemDescription& system);

/// Reads the CSV tables of a system directory without running validate().
/// Throws IoError for a missing required file and DataError (file:line)
/// for malformed rows, series-length mismatches and unknown zones.
SystemDescription read_system(const std::filesystem::path& dir);

/// read_system() followed by validate(); violations raise DataError.
SystemDescription load_system(const std::filesystem::path& dir);

/// Writes the tables read by read_system(). Unbounded capacities are
/// written as empty cells; numbers use shortest round-trip form.
void write_system(const SystemDescription& system, const std::filesystem::path& dir);

}  // namespace coloexp
