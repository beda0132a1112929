#include "coloexp/cost_pipeline.hpp"
#include "coloexp/csv.hpp"
#include "coloexp/domain.hpp"
#include "coloexp/errors.hpp"
#include "coloexp/metrics.hpp"
#include "coloexp/model.hpp"
#include "coloexp/mps.hpp"
#include "coloexp/orchestrator.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;
using namespace coloexp;

namespace
{

enum Exit : int
{
    kOk = 0,
    kInvalid = 1,
    kSolverFailure = 2,
    kIoFailure = 3,
};

int cmd_validate(const fs::path& dir)
{
    const auto sys = read_system(dir);
    const auto violations = validate(sys);
    for (const auto& v : violations)
        std::cerr << v.to_string() << '\n';
    if (!violations.empty())
        return kInvalid;
    std::cout << fmt::format("{}: {} zones, {} colocated resources, {} thermal, {} lines, T={}\n", dir.string(),
                             sys.zones.size(), sys.colo_resources.size(), sys.thermal_resources.size(),
                             sys.lines.size(), sys.horizon);
    return kOk;
}

int cmd_costs(const fs::path& inputs_dir, const fs::path& out_dir)
{
    const auto tables = costs::build_cost_cases(costs::load_cost_inputs(inputs_dir));
    fs::create_directories(out_dir);
    for (const auto& [name, table] : tables)
    {
        const auto path = out_dir / fmt::format("annualized_costs_{}.csv", name);
        costs::write_cost_table(table, path);
        std::cout << path.string() << '\n';
    }
    return kOk;
}

struct SolveArgs
{
    fs::path dir;
    std::string mode = "colocated";
    std::string cost_case = "none";
    double forced = -1.0;
    fs::path export_mps;
    fs::path import_solution;
    fs::path out;
    bool no_solve = false;
};

int cmd_solve(const SolveArgs& a)
{
    const auto mode = mode_from_string(a.mode);
    if (!mode)
        throw DataError(fmt::format("unknown mode '{}'", a.mode));
    const auto base = load_system(a.dir);
    const auto catalog = load_cost_catalog(a.dir);

    ScenarioSpec spec{0, *mode, a.cost_case, a.forced >= 0.0 ? a.forced : base.forced_battery_mw.value_or(0.0)};
    auto sys = scenario_system(base, catalog, spec);
    if (a.forced < 0.0 && !base.forced_battery_mw)
        sys.forced_battery_mw.reset();
    if (const auto v = validate(sys); !v.empty())
        throw DataError("scenario system invalid: " + v.front().to_string());

    const Model model = build_model(sys);
    std::cerr << fmt::format("model: {} variables, {} rows\n", model.lp.num_variables(), model.lp.num_rows());
    if (!a.export_mps.empty())
    {
        export_mps(model.lp, a.export_mps);
        std::cerr << "wrote " << a.export_mps.string() << '\n';
    }
    if (a.no_solve)
        return kOk;

    const Solution sol =
        a.import_solution.empty() ? solve(model.lp) : import_solution(model.lp, a.import_solution);
    std::cout << fmt::format("status {}  objective {}  iterations {}\n", to_string(sol.status),
                             csv::format_number(sol.objective, 12), sol.iterations);
    if (!sol.optimal())
    {
        if (!sol.message.empty())
            std::cerr << sol.message << '\n';
        return kSolverFailure;
    }
    const auto metrics = compute_metrics(sys, model, sol);
    if (!a.out.empty())
    {
        std::vector<std::pair<std::string, std::string>> info = {
            {"mode", a.mode},
            {"cost_case", a.cost_case},
            {"forced_battery_mw", sys.forced_battery_mw ? fmt::format("{}", *sys.forced_battery_mw) : ""},
            {"status", std::string(to_string(sol.status))},
            {"source", a.import_solution.empty() ? "internal" : "imported"},
        };
        write_reports(sys, model, sol, metrics, info, a.out);
        std::cout << "reports in " << a.out.string() << '\n';
    }
    for (auto c : kAllCostCategories)
        std::cout << fmt::format("  {:<8}{}\n", to_string(c),
                                 csv::format_number(metrics.cost_components[static_cast<std::size_t>(c)], 12));
    if (metrics.marginal_value_of_storage)
        std::cout << fmt::format("  marginal value of storage {}\n",
                                 csv::format_number(*metrics.marginal_value_of_storage, 12));
    return kOk;
}

int cmd_matrix(const fs::path& dir, const fs::path& manifest_path, unsigned workers, const fs::path& out)
{
    const auto base = load_system(dir);
    const auto catalog = load_cost_catalog(dir);
    const auto manifest = manifest_path.empty() ? default_manifest() : read_manifest(manifest_path);
    fs::create_directories(out);
    const auto results = run_matrix(base, catalog, manifest, out, workers);
    int failed = 0;
    for (const auto& r : results)
    {
        std::cout << fmt::format("run {:>3} {:<9} {:<4} {:>8}  {}  {:.2f}s\n", r.spec.run_id, to_string(r.spec.mode),
                                 r.spec.cost_case, r.spec.forced_battery_mw,
                                 r.ok ? csv::format_number(r.objective, 12) : "FAILED " + r.message, r.seconds);
        failed += r.ok ? 0 : 1;
    }
    const auto rows = write_summary(out);
    std::cout << fmt::format("{} runs, {} failed, summary.csv has {} rows\n", results.size(), failed, rows);
    return failed == 0 ? kOk : kSolverFailure;
}

int cmd_report(const fs::path& runs_dir)
{
    const auto rows = write_summary(runs_dir);
    std::cout << fmt::format("{}: {} rows\n", (runs_dir / "summary.csv").string(), rows);
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Capacity expansion with colocated VRE and storage"};
    app.require_subcommand(1);

    fs::path validate_dir;
    auto* v = app.add_subcommand("validate", "Load and check a system directory");
    v->add_option("dir", validate_dir)->required();

    fs::path costs_in;
    fs::path costs_out = ".";
    auto* c = app.add_subcommand("costs", "Annualize cost inputs into per-case tables");
    c->add_option("inputs", costs_in, "Directory with cost_breakdown_2021.csv etc.")->required();
    c->add_option("--out", costs_out, "Where annualized_costs_<case>.csv go");

    SolveArgs sa;
    auto* s = app.add_subcommand("solve", "Build and solve one scenario");
    s->add_option("dir", sa.dir)->required();
    s->add_option("--mode", sa.mode)->check(CLI::IsMember({"fixed", "optimized", "colocated"}));
    s->add_option("--cost-case", sa.cost_case, "low, mid or none");
    s->add_option("--forced-battery-mw", sa.forced, "Overrides policy.csv");
    s->add_option("--export-mps", sa.export_mps);
    s->add_option("--import-solution", sa.import_solution, "kind,id,value CSV from an external solver");
    s->add_flag("--no-solve", sa.no_solve, "Stop after building (and exporting)");
    s->add_option("--out", sa.out, "Report directory");

    fs::path m_dir;
    fs::path m_manifest;
    fs::path m_out = "runs";
    unsigned m_workers = std::max(1u, std::thread::hardware_concurrency());
    auto* m = app.add_subcommand("matrix", "Run a scenario manifest");
    m->add_option("dir", m_dir)->required();
    m->add_option("--manifest", m_manifest, "Defaults to the 24-run matrix");
    m->add_option("--workers", m_workers)->check(CLI::PositiveNumber);
    m->add_option("--out", m_out);

    fs::path r_dir;
    auto* r = app.add_subcommand("report", "Rebuild summary.csv from run directories");
    r->add_option("runs", r_dir)->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*v)
            return cmd_validate(validate_dir);
        if (*c)
            return cmd_costs(costs_in, costs_out);
        if (*s)
            return cmd_solve(sa);
        if (*m)
            return cmd_matrix(m_dir, m_manifest, m_workers, m_out);
        if (*r)
            return cmd_report(r_dir);
    }
    catch (const DataError& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    }
    catch (const IoError& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kIoFailure;
    }
    catch (const fs::filesystem_error& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kIoFailure;
    }
    return kOk;
}
