#include "coloexp/model.hpp"

#include "coloexp/colo_formulation.hpp"
#include "coloexp/system_formulation.hpp"

namespace coloexp
{

std::string_view to_string(CostCategory category)
{
    switch (category)
    {
    case CostCategory::Invest:
        return "invest";
    case CostCategory::Fom:
        return "fom";
    case CostCategory::Vom:
        return "vom";
    case CostCategory::Nse:
        return "nse";
    }
    return "unknown";
}

std::string hour_label(std::size_t t)
{
    return std::to_string(t + 1);
}

void ModelBuilder::add_cost(Col col, double coef, CostCategory category)
{
    if (coef == 0.0)
        return;
    lp_.add_cost(col, coef);
    costs_.push_back({col, coef, category});
}

std::array<double, 4> Model::cost_breakdown(const std::vector<double>& x) const
{
    std::array<double, 4> out{};
    for (const auto& term : cost_terms)
        out[static_cast<std::size_t>(term.category)] += term.coef * x[term.col.index];
    return out;
}

Model build_model(const SystemDescription& sys)
{
    ModelBuilder b(sys.horizon, sys.time_weight);
    Model m;
    m.horizon = sys.horizon;
    for (const auto& r : sys.colo_resources)
        m.colo.push_back(emit_colo_resource(r, b));
    m.system = register_system_variables(sys, b);
    emit_zonal_balance(sys, m.colo, m.system, b);
    emit_transport_constraints(sys, m.system, b);
    emit_thermal_limits(sys, m.system, b);
    if (sys.forced_battery_mw)
        m.forced_battery_row = emit_forced_battery(sys, m.colo, b);
    if (sys.rps_share)
        m.rps_row = emit_rps(sys, m.colo, m.system, b);
    emit_system_objective(sys, m.system, b);
    m.cost_terms = b.take_cost_terms();
    m.lp = std::move(b.lp());
    return m;
}

}  // namespace coloexp
