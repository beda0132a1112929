#include "coloexp/orchestrator.hpp"

#include "coloexp/csv.hpp"
#include "coloexp/errors.hpp"
#include "coloexp/model.hpp"

#include <fmt/format.h>

#include <atomic>
#include <chrono>
#include <fstream>
#include <set>
#include <thread>

namespace coloexp
{

namespace
{

using K = ComponentKind;

constexpr std::array<K, 5> kStorageComponents = {K::StorageEnergy, K::ChargeDc, K::DischargeDc, K::ChargeAc,
                                                 K::DischargeAc};

ColoResource split_storage(const ColoResource& hybrid)
{
    ColoResource s = hybrid;
    s.id = hybrid.id + std::string(kSplitStorageSuffix);
    s.components = {};
    for (K k : kStorageComponents)
    {
        if (hybrid.has(k))
            s.components.insert(k);
    }
    s.components.insert(K::Grid);
    if (hybrid.has_dc_storage())
        s.components.insert(K::Inverter);
    for (K k : {K::Grid, K::Inverter})
    {
        s.param(k).existing = 0.0;
        s.param(k).min_capacity = 0.0;
    }
    for (K k : {K::Pv, K::Wind})
        s.param(k) = ComponentParams{};
    s.cf_pv.clear();
    s.cf_wind.clear();
    s.ilr_pv = kFreeRatio;
    s.ilr_wind = kFreeRatio;
    return s;
}

void strip_storage(ColoResource& r)
{
    for (K k : kStorageComponents)
        r.components.erase(k);
    if (!r.has(K::Pv))
        r.components.erase(K::Inverter);
}

std::string format_mw(double v)
{
    return fmt::format("{}", v);
}

}  // namespace

std::string_view to_string(ScenarioMode mode)
{
    switch (mode)
    {
    case ScenarioMode::Fixed:
        return "fixed";
    case ScenarioMode::Optimized:
        return "optimized";
    case ScenarioMode::Colocated:
        return "colocated";
    }
    return "unknown";
}

std::optional<ScenarioMode> mode_from_string(std::string_view name)
{
    for (auto m : {ScenarioMode::Fixed, ScenarioMode::Optimized, ScenarioMode::Colocated})
    {
        if (to_string(m) == name)
            return m;
    }
    return std::nullopt;
}

std::vector<ScenarioSpec> read_manifest(const std::filesystem::path& path)
{
    const auto t = csv::Table::read(path);
    for (const char* col : {"run_id", "mode", "cost_case", "forced_battery_mw"})
        (void)t.require_column(col);
    std::vector<ScenarioSpec> out;
    std::set<int> ids;
    std::set<std::tuple<int, std::string, double>> combos;
    for (const auto& rec : t.records())
    {
        ScenarioSpec s;
        s.run_id = static_cast<int>(t.integer(rec, "run_id"));
        const auto mode = mode_from_string(t.cell(rec, "mode"));
        if (!mode)
            t.fail(rec, fmt::format("unknown mode '{}'", t.cell(rec, "mode")));
        s.mode = *mode;
        s.cost_case = t.cell(rec, "cost_case");
        if (s.cost_case.empty())
            s.cost_case = "none";
        s.forced_battery_mw = t.number(rec, "forced_battery_mw");
        if (s.forced_battery_mw < 0.0)
            t.fail(rec, "negative forced_battery_mw");
        if (!ids.insert(s.run_id).second)
            t.fail(rec, fmt::format("duplicate run_id {}", s.run_id));
        if (!combos.insert({static_cast<int>(s.mode), s.cost_case, s.forced_battery_mw}).second)
            t.fail(rec, "duplicate (mode, cost_case, forced_battery_mw)");
        out.push_back(std::move(s));
    }
    return out;
}

void write_manifest(const std::vector<ScenarioSpec>& specs, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError(fmt::format("cannot write {}", path.string()));
    out << "run_id,mode,cost_case,forced_battery_mw\n";
    for (const auto& s : specs)
        out << fmt::format("{},{},{},{}\n", s.run_id, to_string(s.mode), s.cost_case, format_mw(s.forced_battery_mw));
}

std::vector<ScenarioSpec> default_manifest()
{
    std::vector<ScenarioSpec> out;
    int id = 1;
    for (auto mode : {ScenarioMode::Fixed, ScenarioMode::Optimized, ScenarioMode::Colocated})
    {
        for (const char* cost : {"low", "mid"})
        {
            for (double mw : {3750.0, 5000.0, 7500.0, 15000.0})
                out.push_back({id++, mode, cost, mw});
        }
    }
    return out;
}

SystemDescription apply_mode(SystemDescription sys, ScenarioMode mode)
{
    if (mode == ScenarioMode::Colocated)
        return sys;
    std::vector<ColoResource> out;
    std::vector<ColoResource> split;
    for (auto& r : sys.colo_resources)
    {
        if (r.is_vre() && r.has_storage())
        {
            split.push_back(split_storage(r));
            strip_storage(r);
        }
        if (mode == ScenarioMode::Fixed)
        {
            if (r.has(K::Pv))
                r.ilr_pv = kFixedIlrPv;
            if (r.has(K::Wind))
                r.ilr_wind = kFixedIlrWind;
        }
        else
        {
            r.ilr_pv = kFreeRatio;
            r.ilr_wind = kFreeRatio;
        }
        out.push_back(std::move(r));
    }
    for (auto& s : split)
    {
        const bool taken = std::any_of(out.begin(), out.end(), [&](const ColoResource& r) { return r.id == s.id; });
        if (taken)
            throw DataError(fmt::format("split storage id '{}' collides with an existing resource", s.id));
        out.push_back(std::move(s));
    }
    sys.colo_resources = std::move(out);
    return sys;
}

SystemDescription CostCatalog::apply(SystemDescription system, const std::string& cost_case) const
{
    if (cost_case == "none")
        return system;
    const auto it = tables.find(cost_case);
    if (it == tables.end())
        throw DataError(fmt::format("no cost table for case '{}'", cost_case));
    return costs::apply_cost_case(std::move(system), it->second, regional);
}

CostCatalog load_cost_catalog(const std::filesystem::path& dir)
{
    CostCatalog c;
    c.regional = costs::load_regional_adjustments(dir);
    for (auto name : costs::kCostCases)
    {
        const auto path = dir / fmt::format("annualized_costs_{}.csv", name);
        if (std::filesystem::exists(path))
            c.tables.emplace(std::string(name), costs::read_cost_table(path, std::string(name)));
    }
    if (c.tables.empty() && std::filesystem::is_directory(dir / "costs"))
        c.tables = costs::build_cost_cases(costs::load_cost_inputs(dir / "costs"));
    return c;
}

SystemDescription scenario_system(const SystemDescription& base, const CostCatalog& catalog, const ScenarioSpec& spec)
{
    SystemDescription sys = apply_mode(catalog.apply(base, spec.cost_case), spec.mode);
    sys.forced_battery_mw = spec.forced_battery_mw;
    return sys;
}

RunResult run_scenario(const SystemDescription& base, const CostCatalog& catalog, const ScenarioSpec& spec,
                       const std::optional<std::filesystem::path>& out_dir, const SolverOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    RunResult res;
    res.spec = spec;
    std::vector<std::pair<std::string, std::string>> info = {
        {"run_id", std::to_string(spec.run_id)},
        {"mode", std::string(to_string(spec.mode))},
        {"cost_case", spec.cost_case},
        {"forced_battery_mw", format_mw(spec.forced_battery_mw)},
    };
    try
    {
        const auto sys = scenario_system(base, catalog, spec);
        if (const auto v = validate(sys); !v.empty())
            throw DataError("scenario system invalid: " + v.front().to_string());
        const Model model = build_model(sys);
        const Solution sol = solve(model.lp, options);
        res.status = sol.status;
        res.ok = sol.optimal();
        res.message = sol.message;
        info.emplace_back("status", std::string(to_string(sol.status)));
        info.emplace_back("iterations", std::to_string(sol.iterations));
        if (res.ok)
        {
            res.objective = sol.objective;
            res.metrics = compute_metrics(sys, model, sol);
            if (out_dir)
                write_reports(sys, model, sol, *res.metrics, info, *out_dir);
        }
        else if (out_dir)
        {
            info.emplace_back("message", sol.message);
            write_run_info(info, *out_dir);
        }
    }
    catch (const std::exception& e)
    {
        res.ok = false;
        res.message = e.what();
        if (out_dir)
        {
            info.emplace_back("status", "error");
            info.emplace_back("message", e.what());
            try
            {
                write_run_info(info, *out_dir);
            }
            catch (const std::exception&)
            {
            }
        }
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

std::vector<RunResult> run_matrix(const SystemDescription& base, const CostCatalog& catalog,
                                  const std::vector<ScenarioSpec>& manifest, const std::filesystem::path& runs_dir,
                                  unsigned workers, const SolverOptions& options)
{
    std::vector<RunResult> results(manifest.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < manifest.size(); i = next++)
        {
            const auto dir = runs_dir / std::to_string(manifest[i].run_id);
            results[i] = run_scenario(base, catalog, manifest[i], dir, options);
        }
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(manifest.size())));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();
    return results;
}

}  // namespace coloexp
