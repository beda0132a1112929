#pragma once

// System context rows: sys/balance/<zone>/<t>, sys/line/<id>/<t>,
// sys/thermal/<id>/<t>, sys/forced_battery, sys/rps.

#include "coloexp/domain.hpp"
#include "coloexp/model.hpp"

#include <optional>
#include <vector>

namespace coloexp
{

SystemVariableBlock register_system_variables(const SystemDescription& system, ModelBuilder& builder);

/// Supply equals demand in every zone and hour, with priced non-served energy.
std::vector<RowRef> emit_zonal_balance(const SystemDescription& system, const std::vector<ColoVariableBlock>& colo,
                                       const SystemVariableBlock& vars, ModelBuilder& builder);

/// Directed flows share the existing plus new line capacity.
std::vector<RowRef> emit_transport_constraints(const SystemDescription& system, const SystemVariableBlock& vars,
                                               ModelBuilder& builder);

/// Dispatch within existing plus new thermal capacity.
std::vector<RowRef> emit_thermal_limits(const SystemDescription& system, const SystemVariableBlock& vars,
                                        ModelBuilder& builder);

/// New AC-deliverable storage power summed over all sites equals the
/// forced level. DC-coupled storage counts through the inverter
/// efficiency. Throws DataError when no forced level is set.
RowRef emit_forced_battery(const SystemDescription& system, const std::vector<ColoVariableBlock>& colo,
                           ModelBuilder& builder);

/// Renewable delivery over the horizon covers rps_share of total demand.
/// Throws DataError when no share is set.
RowRef emit_rps(const SystemDescription& system, const std::vector<ColoVariableBlock>& colo,
                const SystemVariableBlock& vars, ModelBuilder& builder);

void emit_system_objective(const SystemDescription& system, const SystemVariableBlock& vars, ModelBuilder& builder);

/// AC-deliverable power per MWh of new storage energy at one site; 0 for
/// sites without storage.
double deliverable_power_per_mwh(const ColoResource& resource);

}  // namespace coloexp
