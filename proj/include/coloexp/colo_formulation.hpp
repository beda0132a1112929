#pragma once

// Co-located resource rows. Row ids follow <resource>/<family>/<component>/<t>,
// where <t> is the 1-based hour or "-" for rows that are not hourly.

#include "coloexp/domain.hpp"
#include "coloexp/model.hpp"

#include <vector>

namespace coloexp
{

/// Capacity variables for sized components and hourly operational
/// variables. All lower bounds are 0.
ColoVariableBlock register_colo_variables(const ColoResource& resource, ModelBuilder& builder);

/// Total/retired definition, retirement cap, and max/min capacity rows.
std::vector<RowRef> emit_capacity_constraints(const ColoResource& resource, const ColoVariableBlock& vars,
                                              ModelBuilder& builder);

/// Fixed VRE-to-interconnection ratios; -1 leaves a ratio free. Throws
/// DataError for other non-positive ratios.
std::vector<RowRef> emit_ratio_constraints(const ColoResource& resource, const ColoVariableBlock& vars,
                                           ModelBuilder& builder);

std::vector<RowRef> emit_energy_balance(const ColoResource& resource, const ColoVariableBlock& vars,
                                        ModelBuilder& builder);

/// Grid export/import capacity and inverter throughput.
std::vector<RowRef> emit_export_limits(const ColoResource& resource, const ColoVariableBlock& vars,
                                       ModelBuilder& builder);

std::vector<RowRef> emit_generation_limits(const ColoResource& resource, const ColoVariableBlock& vars,
                                           ModelBuilder& builder);

/// Cyclic state of charge with per-hour self-discharge, and SOC ceiling.
std::vector<RowRef> emit_soc_dynamics(const ColoResource& resource, const ColoVariableBlock& vars,
                                      ModelBuilder& builder);

std::vector<RowRef> emit_symmetric_storage_limits(const ColoResource& resource, const ColoVariableBlock& vars,
                                                  ModelBuilder& builder);

/// Flow <= capacity for separately sized charge/discharge components.
std::vector<RowRef> emit_asymmetric_storage_limits(const ColoResource& resource, const ColoVariableBlock& vars,
                                                   ModelBuilder& builder);

void emit_objective_terms(const ColoResource& resource, const ColoVariableBlock& vars, ModelBuilder& builder);

/// All of the above in order.
ColoVariableBlock emit_colo_resource(const ColoResource& resource, ModelBuilder& builder);

}  // namespace coloexp
