#include "coloexp/cost_pipeline.hpp"
#include "coloexp/errors.hpp"
#include "coloexp/metrics.hpp"
#include "coloexp/model.hpp"
#include "coloexp/mps.hpp"
#include "coloexp/orchestrator.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>

namespace py = pybind11;
using namespace coloexp;

namespace
{

ScenarioMode parse_mode(const std::string& name)
{
    const auto m = mode_from_string(name);
    if (!m)
        throw DataError("unknown mode '" + name + "'");
    return *m;
}

struct Problem
{
    SystemDescription system;
    Model model;
};

struct Result
{
    std::shared_ptr<const Problem> problem;
    Solution solution;

    [[nodiscard]] const LinearProgram& lp() const { return problem->model.lp; }
};

std::shared_ptr<Problem> make_problem(const std::filesystem::path& dir, const std::string& mode,
                                      const std::string& cost_case, std::optional<double> forced)
{
    const auto base = load_system(dir);
    const auto catalog = load_cost_catalog(dir);
    ScenarioSpec spec;
    spec.mode = parse_mode(mode);
    spec.cost_case = cost_case;
    auto sys = scenario_system(base, catalog, spec);
    sys.forced_battery_mw = forced;
    if (const auto v = validate(sys); !v.empty())
        throw DataError("scenario system invalid: " + v.front().to_string());
    auto p = std::make_shared<Problem>();
    p->model = build_model(sys);
    p->system = std::move(sys);
    return p;
}

py::dict gw_km_dict(const GwKm& g)
{
    py::dict d;
    d["interconnection_gw"] = g.interconnection_gw;
    d["interconnection_gw_km"] = g.interconnection_gw_km;
    d["interzonal_gw"] = g.interzonal_gw;
    d["interzonal_gw_km"] = g.interzonal_gw_km;
    d["new_interzonal_gw_km"] = g.new_interzonal_gw_km;
    return d;
}

py::dict metrics_dict(const RunMetrics& m)
{
    py::dict d;
    d["total_cost"] = m.total_cost;
    py::dict costs;
    for (auto c : kAllCostCategories)
        costs[py::str(std::string(to_string(c)))] = m.cost_components[static_cast<std::size_t>(c)];
    d["costs"] = costs;
    d["gw_km"] = gw_km_dict(m.gw_km);
    d["avg_pv_inverter"] = m.ratios.avg_pv_inverter;
    d["avg_pv_grid"] = m.ratios.avg_pv_grid;
    d["avg_wind_grid"] = m.ratios.avg_wind_grid;
    py::dict ratios;
    for (const auto& r : m.ratios.per_resource)
    {
        py::dict e;
        e["pv_inverter"] = r.pv_inverter;
        e["pv_grid"] = r.pv_grid;
        e["wind_grid"] = r.wind_grid;
        ratios[py::str(r.resource)] = e;
    }
    d["ratios"] = ratios;
    d["marginal_value_of_storage"] = m.marginal_value_of_storage;
    py::dict split;
    split["with_pv"] = m.storage_split.with_pv;
    split["with_wind"] = m.storage_split.with_wind;
    split["standalone"] = m.storage_split.standalone;
    split["total_mwh"] = m.storage_split.total_mwh;
    d["storage_split"] = split;
    return d;
}

py::dict run_dict(const RunResult& r)
{
    py::dict d;
    d["run_id"] = r.spec.run_id;
    d["mode"] = std::string(to_string(r.spec.mode));
    d["cost_case"] = r.spec.cost_case;
    d["forced_battery_mw"] = r.spec.forced_battery_mw;
    d["status"] = std::string(to_string(r.status));
    d["ok"] = r.ok;
    d["message"] = r.message;
    d["objective"] = r.objective;
    d["seconds"] = r.seconds;
    d["metrics"] = r.metrics ? py::object(metrics_dict(*r.metrics)) : py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Capacity expansion with co-located VRE and storage";

    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    m.def(
        "validate",
        [](const std::filesystem::path& dir) {
            std::vector<std::string> out;
            for (const auto& v : validate(read_system(dir)))
                out.push_back(v.to_string());
            return out;
        },
        py::arg("system_dir"), "Violations found in a system directory; empty when valid.");

    m.def("capital_recovery_factor", &costs::capital_recovery_factor, py::arg("wacc"), py::arg("lifespan_years"));
    m.def(
        "annuitize",
        [](double overnight, double wacc, double lifespan_years, double multiplier) {
            return costs::annuitize(overnight, {wacc, lifespan_years, multiplier});
        },
        py::arg("overnight"), py::arg("wacc"), py::arg("lifespan_years"), py::arg("regional_multiplier") = 1.0);

    py::class_<Result>(m, "Result")
        .def_property_readonly("status", [](const Result& r) { return std::string(to_string(r.solution.status)); })
        .def_property_readonly("optimal", [](const Result& r) { return r.solution.optimal(); })
        .def_property_readonly("objective", [](const Result& r) { return r.solution.objective; })
        .def_property_readonly("iterations", [](const Result& r) { return r.solution.iterations; })
        .def_property_readonly("message", [](const Result& r) { return r.solution.message; })
        .def("value", [](const Result& r, const std::string& id) { return r.solution.value(r.lp(), id); },
             py::arg("variable_id"))
        .def("dual", [](const Result& r, const std::string& id) { return r.solution.dual(r.lp(), id); },
             py::arg("row_id"), "d(objective)/d(rhs) of a row.")
        .def("values",
             [](const Result& r) {
                 std::map<std::string, double> out;
                 for (std::size_t j = 0; j < r.solution.primal.size(); ++j)
                     out.emplace(r.lp().variables()[j].id, r.solution.primal[j]);
                 return out;
             })
        .def("duals",
             [](const Result& r) {
                 std::map<std::string, double> out;
                 for (std::size_t i = 0; i < r.solution.duals.size(); ++i)
                     out.emplace(r.lp().rows()[i].id, r.solution.duals[i]);
                 return out;
             })
        .def("metrics",
             [](const Result& r) {
                 if (!r.solution.optimal())
                     throw DataError("metrics need an optimal solution");
                 return metrics_dict(compute_metrics(r.problem->system, r.problem->model, r.solution));
             })
        .def(
            "write_reports",
            [](const Result& r, const std::filesystem::path& out) {
                if (!r.solution.optimal())
                    throw DataError("reports need an optimal solution");
                const auto& p = *r.problem;
                write_reports(p.system, p.model, r.solution, compute_metrics(p.system, p.model, r.solution),
                              {{"status", std::string(to_string(r.solution.status))}}, out);
            },
            py::arg("out_dir"));

    py::class_<Problem, std::shared_ptr<Problem>>(m, "Problem")
        .def(py::init(&make_problem), py::arg("system_dir"), py::arg("mode") = "colocated",
             py::arg("cost_case") = "none", py::arg("forced_battery_mw") = py::none())
        .def_property_readonly("num_variables", [](const Problem& p) { return p.model.lp.num_variables(); })
        .def_property_readonly("num_rows", [](const Problem& p) { return p.model.lp.num_rows(); })
        .def("variable_ids",
             [](const Problem& p) {
                 std::vector<std::string> out;
                 for (const auto& v : p.model.lp.variables())
                     out.push_back(v.id);
                 return out;
             })
        .def("row_ids",
             [](const Problem& p) {
                 std::vector<std::string> out;
                 for (const auto& r : p.model.lp.rows())
                     out.push_back(r.id);
                 return out;
             })
        .def("export_mps", [](const Problem& p, const std::filesystem::path& path) { export_mps(p.model.lp, path); },
             py::arg("path"))
        .def("solve",
             [](const std::shared_ptr<Problem>& p) {
                 Solution s;
                 {
                     py::gil_scoped_release release;
                     s = solve(p->model.lp);
                 }
                 return Result{p, std::move(s)};
             })
        .def(
            "import_solution",
            [](const std::shared_ptr<Problem>& p, const std::filesystem::path& path, double tol) {
                return Result{p, import_solution(p->model.lp, path, tol)};
            },
            py::arg("path"), py::arg("tolerance") = 1e-6,
            "Loads a kind,id,value CSV from another solver and verifies it.");

    m.def(
        "run_matrix",
        [](const std::filesystem::path& dir, const std::filesystem::path& out,
           const std::optional<std::filesystem::path>& manifest, unsigned workers) {
            const auto base = load_system(dir);
            const auto catalog = load_cost_catalog(dir);
            const auto specs = manifest ? read_manifest(*manifest) : default_manifest();
            std::vector<RunResult> results;
            {
                py::gil_scoped_release release;
                results = run_matrix(base, catalog, specs, out, workers);
                write_summary(out);
            }
            py::list rows;
            for (const auto& r : results)
                rows.append(run_dict(r));
            return rows;
        },
        py::arg("system_dir"), py::arg("out_dir"), py::arg("manifest") = py::none(), py::arg("workers") = 1,
        "Runs a scenario manifest and writes per-run reports plus summary.csv.");

    m.def("write_summary", &write_summary, py::arg("runs_dir"));
}
