#include "coloexp/metrics.hpp"

#include "coloexp/csv.hpp"
#include "coloexp/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <tuple>

namespace coloexp
{

namespace
{

using K = ComponentKind;

double value(const Solution& s, Col c)
{
    return s.primal.at(c.index);
}

double total_of(const ColoVariableBlock& v, const Solution& s, K k)
{
    const auto& c = v.cap(k);
    return c ? value(s, c->total) : 0.0;
}

std::string num(double v)
{
    return csv::format_number(v);
}

class CsvWriter
{
public:
    explicit CsvWriter(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary)
    {
        if (!out_)
            throw IoError(fmt::format("cannot write {}", path.string()));
    }
    ~CsvWriter() = default;

    void row(std::initializer_list<std::string> fields)
    {
        bool first = true;
        for (const auto& f : fields)
        {
            if (!first)
                out_ << ',';
            out_ << csv::escape(f);
            first = false;
        }
        out_ << '\n';
    }

    void finish()
    {
        out_.flush();
        if (!out_)
            throw IoError(fmt::format("write failed: {}", path_.string()));
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

void ensure_dir(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
}

std::optional<double> weighted(const std::vector<std::pair<double, double>>& ratio_weight)
{
    double num_sum = 0.0;
    double den = 0.0;
    for (const auto& [r, w] : ratio_weight)
    {
        num_sum += r * w;
        den += w;
    }
    if (den <= 0.0)
        return std::nullopt;
    return num_sum / den;
}

}  // namespace

RatioSummary compute_ratios(const SystemDescription& sys, const Model& m, const Solution& s)
{
    RatioSummary out;
    std::vector<std::pair<double, double>> pv_inv;
    std::vector<std::pair<double, double>> pv_grid;
    std::vector<std::pair<double, double>> wind_grid;
    for (std::size_t i = 0; i < sys.colo_resources.size(); ++i)
    {
        const auto& r = sys.colo_resources[i];
        const auto& v = m.colo[i];
        ResourceRatios rr;
        rr.resource = r.id;
        const double pv = total_of(v, s, K::Pv);
        const double wind = total_of(v, s, K::Wind);
        const double inv = total_of(v, s, K::Inverter);
        const double grid = total_of(v, s, K::Grid);
        if (r.has(K::Pv) && pv > kCapacityFloor)
        {
            if (inv > kCapacityFloor)
            {
                rr.pv_inverter = pv / inv;
                pv_inv.emplace_back(*rr.pv_inverter, pv);
            }
            if (grid > kCapacityFloor)
            {
                rr.pv_grid = pv / grid;
                pv_grid.emplace_back(*rr.pv_grid, pv);
            }
        }
        if (r.has(K::Wind) && wind > kCapacityFloor && grid > kCapacityFloor)
        {
            rr.wind_grid = wind / grid;
            wind_grid.emplace_back(*rr.wind_grid, wind);
        }
        if (rr.pv_inverter || rr.pv_grid || rr.wind_grid)
            out.per_resource.push_back(std::move(rr));
    }
    out.avg_pv_inverter = weighted(pv_inv);
    out.avg_pv_grid = weighted(pv_grid);
    out.avg_wind_grid = weighted(wind_grid);
    return out;
}

GwKm compute_gw_km(const SystemDescription& sys, const Model& m, const Solution& s)
{
    GwKm g;
    for (std::size_t i = 0; i < sys.colo_resources.size(); ++i)
    {
        const double grid = total_of(m.colo[i], s, K::Grid);
        g.interconnection_gw += grid / 1000.0;
        g.interconnection_gw_km += grid * sys.colo_resources[i].interconnection_km / 1000.0;
    }
    for (std::size_t l = 0; l < sys.lines.size(); ++l)
    {
        const auto& line = sys.lines[l];
        const double built = value(s, m.system.line_new[l]);
        g.interzonal_gw += (line.existing_capacity + built) / 1000.0;
        g.interzonal_gw_km += (line.existing_capacity + built) * line.length_km / 1000.0;
        g.new_interzonal_gw_km += built * line.length_km / 1000.0;
    }
    return g;
}

double marginal_value_of_storage(const Model& m, const Solution& s)
{
    if (!m.forced_battery_row)
        throw DataError("model has no forced battery row");
    return -s.duals.at(m.forced_battery_row->index);
}

std::vector<Curtailment> compute_curtailment(const SystemDescription& sys, const Model& m, const Solution& s)
{
    std::vector<Curtailment> out;
    for (std::size_t i = 0; i < sys.colo_resources.size(); ++i)
    {
        const auto& r = sys.colo_resources[i];
        const auto& v = m.colo[i];
        auto add = [&](K k, const std::vector<Col>& flow, const std::vector<double>& cf) {
            if (flow.empty())
                return;
            Curtailment c;
            c.resource = r.id;
            c.component = k;
            const double cap = total_of(v, s, k);
            for (std::size_t t = 0; t < flow.size(); ++t)
            {
                c.available_mwh += cf[t] * cap;
                c.curtailed_mwh += std::max(0.0, cf[t] * cap - value(s, flow[t]));
            }
            out.push_back(c);
        };
        add(K::Pv, v.theta_pv, r.cf_pv);
        add(K::Wind, v.theta_wind, r.cf_wind);
    }
    return out;
}

StorageSplit storage_colocation_split(const SystemDescription& sys, const Model& m, const Solution& s)
{
    StorageSplit out;
    double pv = 0.0;
    double wind = 0.0;
    double alone = 0.0;
    for (std::size_t i = 0; i < sys.colo_resources.size(); ++i)
    {
        const auto& r = sys.colo_resources[i];
        const double e = total_of(m.colo[i], s, K::StorageEnergy);
        if (r.has(K::Pv))
            pv += e;
        else if (r.has(K::Wind))
            wind += e;
        else
            alone += e;
    }
    out.total_mwh = pv + wind + alone;
    if (out.total_mwh > kCapacityFloor)
    {
        out.with_pv = 100.0 * pv / out.total_mwh;
        out.with_wind = 100.0 * wind / out.total_mwh;
        out.standalone = 100.0 * alone / out.total_mwh;
    }
    return out;
}

RunMetrics compute_metrics(const SystemDescription& sys, const Model& m, const Solution& s)
{
    RunMetrics out;
    out.ratios = compute_ratios(sys, m, s);
    out.gw_km = compute_gw_km(sys, m, s);
    out.total_cost = s.objective;
    out.cost_components = m.cost_breakdown(s.primal);
    if (m.forced_battery_row)
        out.marginal_value_of_storage = marginal_value_of_storage(m, s);
    out.curtailment = compute_curtailment(sys, m, s);
    out.storage_split = storage_colocation_split(sys, m, s);
    return out;
}

void write_run_info(const std::vector<std::pair<std::string, std::string>>& run_info,
                    const std::filesystem::path& out_dir)
{
    ensure_dir(out_dir);
    CsvWriter w(out_dir / "metrics.csv");
    w.row({"scope", "key", "value"});
    for (const auto& [k, v] : run_info)
        w.row({"run", k, v});
    w.finish();
}

void write_reports(const SystemDescription& sys, const Model& m, const Solution& s, const RunMetrics& metrics,
                   const std::vector<std::pair<std::string, std::string>>& run_info,
                   const std::filesystem::path& out_dir)
{
    ensure_dir(out_dir);

    {
        CsvWriter w(out_dir / "capacity.csv");
        w.row({"resource", "component", "existing", "new", "retired", "total"});
        for (std::size_t i = 0; i < sys.colo_resources.size(); ++i)
        {
            const auto& r = sys.colo_resources[i];
            for (auto k : kAllComponents)
            {
                const auto& c = m.colo[i].cap(k);
                if (!c)
                    continue;
                w.row({r.id, std::string(to_string(k)), num(r.param(k).existing), num(value(s, c->built)),
                       num(value(s, c->retired)), num(value(s, c->total))});
            }
        }
        for (std::size_t g = 0; g < sys.thermal_resources.size(); ++g)
        {
            const auto& gen = sys.thermal_resources[g];
            const double built = value(s, m.system.thermal_new[g]);
            w.row({gen.id, "thermal", num(gen.existing_capacity), num(built), "0", num(gen.existing_capacity + built)});
        }
        for (std::size_t l = 0; l < sys.lines.size(); ++l)
        {
            const auto& line = sys.lines[l];
            const double built = value(s, m.system.line_new[l]);
            w.row({line.id(), "line", num(line.existing_capacity), num(built), "0",
                   num(line.existing_capacity + built)});
        }
        w.finish();
    }

    {
        CsvWriter w(out_dir / "dispatch.csv");
        w.row({"resource", "t", "theta_pv", "theta_wind", "theta_dc", "pi_dc", "theta_ac", "pi_ac", "theta_grid",
               "pi_grid", "soc"});
        for (std::size_t i = 0; i < sys.colo_resources.size(); ++i)
        {
            const auto& v = m.colo[i];
            for (std::size_t t = 0; t < m.horizon; ++t)
            {
                auto f = [&](const std::vector<Col>& cols) { return cols.empty() ? std::string() : num(value(s, cols[t])); };
                w.row({v.resource_id, hour_label(t), f(v.theta_pv), f(v.theta_wind), f(v.theta_dc), f(v.pi_dc),
                       f(v.theta_ac), f(v.pi_ac), f(v.theta_grid), f(v.pi_grid), f(v.soc)});
            }
        }
        w.finish();
    }

    {
        CsvWriter w(out_dir / "duals.csv");
        w.row({"row", "dual_dobj_drhs"});
        for (std::size_t i = 0; i < m.lp.num_rows(); ++i)
            w.row({m.lp.rows()[i].id, num(s.duals[i])});
        w.finish();
    }

    {
        CsvWriter w(out_dir / "costs.csv");
        w.row({"category", "value"});
        double sum = 0.0;
        for (auto c : kAllCostCategories)
        {
            const double v = metrics.cost_components[static_cast<std::size_t>(c)];
            sum += v;
            w.row({std::string(to_string(c)), num(v)});
        }
        w.row({"total", num(sum)});
        w.finish();
    }

    {
        CsvWriter w(out_dir / "metrics.csv");
        w.row({"scope", "key", "value"});
        for (const auto& [k, v] : run_info)
            w.row({"run", k, v});
        auto sys_row = [&](const char* key, double v) { w.row({"system", key, num(v)}); };
        sys_row("total_cost", metrics.total_cost);
        for (auto c : kAllCostCategories)
            w.row({"system", fmt::format("cost_{}", to_string(c)), num(metrics.cost_components[static_cast<std::size_t>(c)])});
        sys_row("interconnection_gw", metrics.gw_km.interconnection_gw);
        sys_row("interconnection_gw_km", metrics.gw_km.interconnection_gw_km);
        sys_row("interzonal_gw", metrics.gw_km.interzonal_gw);
        sys_row("interzonal_gw_km", metrics.gw_km.interzonal_gw_km);
        sys_row("new_interzonal_gw_km", metrics.gw_km.new_interzonal_gw_km);
        if (metrics.marginal_value_of_storage)
            sys_row("marginal_value_of_storage", *metrics.marginal_value_of_storage);
        if (metrics.ratios.avg_pv_inverter)
            sys_row("avg_ratio_pv_inverter", *metrics.ratios.avg_pv_inverter);
        if (metrics.ratios.avg_pv_grid)
            sys_row("avg_ratio_pv_grid", *metrics.ratios.avg_pv_grid);
        if (metrics.ratios.avg_wind_grid)
            sys_row("avg_ratio_wind_grid", *metrics.ratios.avg_wind_grid);
        sys_row("storage_total_mwh", metrics.storage_split.total_mwh);
        sys_row("storage_with_pv_pct", metrics.storage_split.with_pv);
        sys_row("storage_with_wind_pct", metrics.storage_split.with_wind);
        sys_row("storage_standalone_pct", metrics.storage_split.standalone);
        for (const auto& r : metrics.ratios.per_resource)
        {
            if (r.pv_inverter)
                w.row({r.resource, "ratio_pv_inverter", num(*r.pv_inverter)});
            if (r.pv_grid)
                w.row({r.resource, "ratio_pv_grid", num(*r.pv_grid)});
            if (r.wind_grid)
                w.row({r.resource, "ratio_wind_grid", num(*r.wind_grid)});
        }
        for (const auto& c : metrics.curtailment)
        {
            const std::string name(to_string(c.component));
            w.row({c.resource, "curtailment_" + name + "_mwh", num(c.curtailed_mwh)});
            w.row({c.resource, "curtailment_" + name + "_pct", num(c.percent())});
        }
        w.finish();
    }
}

std::size_t write_summary(const std::filesystem::path& runs_dir)
{
    if (!std::filesystem::is_directory(runs_dir))
        throw IoError(fmt::format("not a directory: {}", runs_dir.string()));

    struct RunRow
    {
        std::map<std::string, std::string> fields;
        std::tuple<std::string, std::string, double, std::string> key;
    };
    std::vector<RunRow> rows;
    std::vector<std::string> run_keys;
    std::set<std::string> system_keys;

    std::vector<std::filesystem::path> dirs;
    for (const auto& entry : std::filesystem::directory_iterator(runs_dir))
    {
        if (entry.is_directory() && std::filesystem::exists(entry.path() / "metrics.csv"))
            dirs.push_back(entry.path());
    }
    std::sort(dirs.begin(), dirs.end());

    for (const auto& dir : dirs)
    {
        const auto t = csv::Table::read(dir / "metrics.csv");
        RunRow row;
        for (const auto& rec : t.records())
        {
            const std::string scope = t.cell(rec, "scope");
            const std::string key = t.cell(rec, "key");
            if (scope == "run")
            {
                if (std::find(run_keys.begin(), run_keys.end(), key) == run_keys.end())
                    run_keys.push_back(key);
                row.fields[key] = t.cell(rec, "value");
            }
            else if (scope == "system")
            {
                system_keys.insert(key);
                row.fields[key] = t.cell(rec, "value");
            }
        }
        const auto forced = csv::parse_double(row.fields["forced_battery_mw"]);
        row.key = {row.fields["mode"], row.fields["cost_case"], forced.value_or(0.0), dir.filename().string()};
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const RunRow& a, const RunRow& b) { return a.key < b.key; });

    std::vector<std::string> columns = run_keys;
    for (const auto& k : system_keys)
        columns.push_back(k);

    std::ofstream out(runs_dir / "summary.csv", std::ios::binary);
    if (!out)
        throw IoError(fmt::format("cannot write {}", (runs_dir / "summary.csv").string()));
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << csv::escape(columns[i]);
    out << '\n';
    for (auto& row : rows)
    {
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << (i ? "," : "") << csv::escape(row.fields[columns[i]]);
        out << '\n';
    }
    if (!out)
        throw IoError("summary write failed");
    return rows.size();
}

}  // namespace coloexp
