#include "coloexp/mps.hpp"

#include "coloexp/csv.hpp"
#include "coloexp/errors.hpp"

#include <fmt/format.h>

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace coloexp
{

namespace
{

bool plain_char(unsigned char c)
{
    if (std::isalnum(c))
        return true;
    switch (c)
    {
    case '_': case '.': case '/': case ':': case '+': case '-':
    case '[': case ']': case '(': case ')': case '<': case '>': case '=': case ',':
        return true;
    default:
        return false;
    }
}

int hex_value(char c)
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

// exact round-trip for doubles
std::string exact(double v)
{
    if (v == 0.0)
        return "0";
    return fmt::format("{}", v);
}

std::vector<std::string> tokens(const std::string& line)
{
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t)
        out.push_back(t);
    return out;
}

}  // namespace

std::string mangle_name(std::string_view id)
{
    std::string out;
    out.reserve(id.size());
    for (char ch : id)
    {
        const auto c = static_cast<unsigned char>(ch);
        if (plain_char(c))
            out.push_back(ch);
        else
            out += fmt::format("%{:02X}", c);
    }
    return out;
}

std::string demangle_name(std::string_view name)
{
    std::string out;
    out.reserve(name.size());
    for (std::size_t i = 0; i < name.size(); ++i)
    {
        if (name[i] != '%')
        {
            out.push_back(name[i]);
            continue;
        }
        if (i + 2 >= name.size() || hex_value(name[i + 1]) < 0 || hex_value(name[i + 2]) < 0)
            throw DataError("malformed encoded name: " + std::string(name));
        out.push_back(static_cast<char>(hex_value(name[i + 1]) * 16 + hex_value(name[i + 2])));
        i += 2;
    }
    return out;
}

void write_mps(const LinearProgram& lp, std::ostream& out, std::string_view name)
{
    const std::string obj(kObjectiveRowName);
    out << "NAME " << name << "\n";
    out << "ROWS\n";
    out << " N " << obj << "\n";
    for (const Row& r : lp.rows())
    {
        const char tag = r.sense == RowSense::Le ? 'L' : (r.sense == RowSense::Ge ? 'G' : 'E');
        out << " " << tag << " " << mangle_name(r.id) << "\n";
    }

    // column-major view of the coefficients
    std::vector<std::vector<std::pair<std::size_t, double>>> by_col(lp.num_variables());
    for (std::size_t i = 0; i < lp.num_rows(); ++i)
    {
        for (const Term& t : lp.rows()[i].terms)
            by_col[t.col.index].emplace_back(i, t.coef);
    }
    std::vector<std::string> col_names;
    col_names.reserve(lp.num_variables());
    for (const Variable& v : lp.variables())
        col_names.push_back(mangle_name(v.id));

    out << "COLUMNS\n";
    for (std::size_t j = 0; j < lp.num_variables(); ++j)
    {
        const Variable& v = lp.variables()[j];
        // always emit the objective entry so empty columns still exist
        out << "    " << col_names[j] << " " << obj << " " << exact(v.cost) << "\n";
        for (const auto& [i, coef] : by_col[j])
            out << "    " << col_names[j] << " " << mangle_name(lp.rows()[i].id) << " " << exact(coef) << "\n";
    }

    out << "RHS\n";
    for (const Row& r : lp.rows())
    {
        if (r.rhs != 0.0)
            out << "    RHS " << mangle_name(r.id) << " " << exact(r.rhs) << "\n";
    }

    // one-sided rows only, so the section stays empty
    out << "RANGES\n";
    out << "BOUNDS\n";
    for (std::size_t j = 0; j < lp.num_variables(); ++j)
    {
        const Variable& v = lp.variables()[j];
        const std::string& n = col_names[j];
        const bool lo_inf = !std::isfinite(v.lower);
        const bool up_inf = !std::isfinite(v.upper);
        if (!lo_inf && !up_inf && v.lower == v.upper)
        {
            out << " FX BND " << n << " " << exact(v.lower) << "\n";
            continue;
        }
        if (lo_inf && up_inf)
        {
            out << " FR BND " << n << "\n";
            continue;
        }
        if (lo_inf)
            out << " MI BND " << n << "\n";
        else if (v.lower != 0.0 || (!up_inf && v.upper < 0.0))
            out << " LO BND " << n << " " << exact(v.lower) << "\n";
        if (!up_inf)
            out << " UP BND " << n << " " << exact(v.upper) << "\n";
    }
    out << "ENDATA\n";
}

void export_mps(const LinearProgram& lp, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    write_mps(lp, out);
    if (!out)
        throw IoError("failed writing " + path.string());
}

LinearProgram read_mps(std::istream& in)
{
    enum class Section { None, Rows, Columns, Rhs, Ranges, Bounds, Done };
    struct PendingRow
    {
        std::string id;
        RowSense sense;
        std::vector<Term> terms;
        double rhs = 0.0;
    };

    Section section = Section::None;
    std::string objective_name;
    std::vector<PendingRow> rows;
    std::unordered_map<std::string, std::size_t> row_lookup;
    LinearProgram lp;
    std::string line;
    std::size_t line_no = 0;

    auto fail = [&](const std::string& what) -> void {
        throw DataError(fmt::format("mps:{}: {}", line_no, what));
    };
    auto number = [&](const std::string& s) {
        auto v = csv::parse_double(s);
        if (!v)
            fail("'" + s + "' is not a number");
        return *v;
    };
    auto column_of = [&](const std::string& name) {
        auto c = lp.find_variable(demangle_name(name));
        if (!c)
            fail("unknown column " + name);
        return *c;
    };

    while (std::getline(in, line))
    {
        ++line_no;
        if (line.empty() || line[0] == '*')
            continue;
        auto tok = tokens(line);
        if (tok.empty())
            continue;
        if (!std::isspace(static_cast<unsigned char>(line[0])))
        {
            const std::string& head = tok[0];
            if (head == "NAME")
                section = Section::None;
            else if (head == "ROWS")
                section = Section::Rows;
            else if (head == "COLUMNS")
                section = Section::Columns;
            else if (head == "RHS")
                section = Section::Rhs;
            else if (head == "RANGES")
                section = Section::Ranges;
            else if (head == "BOUNDS")
                section = Section::Bounds;
            else if (head == "ENDATA")
            {
                section = Section::Done;
                break;
            }
            else
                fail("unsupported section " + head);
            continue;
        }

        switch (section)
        {
        case Section::Rows: {
            if (tok.size() != 2)
                fail("malformed ROWS entry");
            const std::string& type = tok[0];
            if (type == "N")
            {
                if (objective_name.empty())
                    objective_name = tok[1];
                continue;  // extra free rows are dropped
            }
            RowSense sense = RowSense::Eq;
            if (type == "L")
                sense = RowSense::Le;
            else if (type == "G")
                sense = RowSense::Ge;
            else if (type != "E")
                fail("unknown row type " + type);
            row_lookup.emplace(tok[1], rows.size());
            rows.push_back(PendingRow{demangle_name(tok[1]), sense, {}, 0.0});
            break;
        }
        case Section::Columns: {
            if (tok.size() >= 2 && tok[1] == "'MARKER'")
                fail("integer markers are not supported");
            if (tok.size() != 3 && tok.size() != 5)
                fail("malformed COLUMNS entry");
            const std::string id = demangle_name(tok[0]);
            auto col = lp.find_variable(id);
            if (!col)
                col = lp.add_variable(id, 0.0, kInfinity, 0.0);
            for (std::size_t k = 1; k + 1 < tok.size(); k += 2)
            {
                const double v = number(tok[k + 1]);
                if (tok[k] == objective_name)
                {
                    lp.add_cost(*col, v);
                    continue;
                }
                auto it = row_lookup.find(tok[k]);
                if (it == row_lookup.end())
                    fail("unknown row " + tok[k]);
                rows[it->second].terms.push_back(Term{*col, v});
            }
            break;
        }
        case Section::Rhs: {
            if (tok.size() != 3 && tok.size() != 5)
                fail("malformed RHS entry");
            for (std::size_t k = 1; k + 1 < tok.size(); k += 2)
            {
                if (tok[k] == objective_name)
                    fail("objective constants are not supported");
                auto it = row_lookup.find(tok[k]);
                if (it == row_lookup.end())
                    fail("unknown row " + tok[k]);
                rows[it->second].rhs = number(tok[k + 1]);
            }
            break;
        }
        case Section::Ranges:
            fail("ranged rows are not supported");
            break;
        case Section::Bounds: {
            if (tok.size() < 3)
                fail("malformed BOUNDS entry");
            const std::string& type = tok[0];
            const Col col = column_of(tok[2]);
            const Variable& v = lp.variable(col);
            double lo = v.lower;
            double up = v.upper;
            if (type == "FR")
            {
                lo = -kInfinity;
                up = kInfinity;
            }
            else if (type == "MI")
                lo = -kInfinity;
            else if (type == "PL")
                up = kInfinity;
            else
            {
                if (tok.size() != 4)
                    fail("bound " + type + " needs a value");
                const double val = number(tok[3]);
                if (type == "UP")
                    up = val;
                else if (type == "LO")
                    lo = val;
                else if (type == "FX")
                    lo = up = val;
                else
                    fail("unsupported bound type " + type);
            }
            if (lo > up)
                fail("inconsistent bounds on " + tok[2]);
            lp.set_bounds(col, lo, up);
            break;
        }
        default:
            fail("data outside a section");
        }
    }
    if (section != Section::Done)
        throw DataError("mps: missing ENDATA");

    for (auto& r : rows)
        lp.add_row(std::move(r.id), std::move(r.terms), r.sense, r.rhs);
    return lp;
}

LinearProgram import_mps(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    return read_mps(in);
}

void write_solution(const LinearProgram& lp, const Solution& sol, std::ostream& out)
{
    out << "kind,id,value\n";
    for (std::size_t j = 0; j < lp.num_variables(); ++j)
        out << "var," << csv::escape(lp.variables()[j].id) << "," << exact(sol.primal.at(j)) << "\n";
    for (std::size_t i = 0; i < lp.num_rows() && i < sol.duals.size(); ++i)
        out << "row," << csv::escape(lp.rows()[i].id) << "," << exact(sol.duals[i]) << "\n";
}

void write_solution(const LinearProgram& lp, const Solution& sol, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    write_solution(lp, sol, out);
}

Solution read_solution(const LinearProgram& lp, std::istream& in, double tolerance)
{
    std::stringstream buf;
    buf << in.rdbuf();
    const csv::Table table = csv::Table::parse(buf.str(), "solution");
    const std::size_t kind_col = table.require_column("kind");
    const std::size_t id_col = table.require_column("id");
    (void)table.require_column("value");

    Solution sol;
    sol.primal.assign(lp.num_variables(), 0.0);
    sol.duals.assign(lp.num_rows(), 0.0);
    bool have_duals = false;
    for (const auto& rec : table.records())
    {
        const std::string& kind = rec.fields[kind_col];
        const std::string& id = rec.fields[id_col];
        const double value = table.number(rec, "value");
        if (kind == "var")
        {
            auto c = lp.find_variable(id);
            if (!c)
                table.fail(rec, "unknown variable id " + id);
            sol.primal[c->index] = value;
        }
        else if (kind == "row")
        {
            auto r = lp.find_row(id);
            if (!r)
                table.fail(rec, "unknown row id " + id);
            sol.duals[r->index] = value;
            have_duals = true;
        }
        else
        {
            table.fail(rec, "kind must be 'var' or 'row', found '" + kind + "'");
        }
    }

    sol.objective = lp.objective_value(sol.primal);
    sol.reduced_costs.resize(lp.num_variables());
    for (std::size_t j = 0; j < lp.num_variables(); ++j)
        sol.reduced_costs[j] = lp.variables()[j].cost;
    for (std::size_t i = 0; i < lp.num_rows(); ++i)
    {
        for (const Term& t : lp.rows()[i].terms)
            sol.reduced_costs[t.col.index] -= t.coef * sol.duals[i];
    }

    const Verification v = verify(lp, sol.primal, sol.duals);
    double cmax = 1.0;
    for (const Variable& var : lp.variables())
        cmax = std::max(cmax, std::abs(var.cost));
    const bool ok = have_duals ? (v.primal_feasible(tolerance) && v.max_dual_sign_violation <= tolerance * cmax &&
                                  v.max_complementarity <= tolerance * cmax && v.duality_gap <= tolerance)
                               : v.primal_feasible(tolerance);
    sol.status = ok ? SolveStatus::Optimal : SolveStatus::VerificationFailed;
    if (!have_duals)
        sol.message = "no row duals supplied; optimality not certified";
    if (!ok)
    {
        sol.message = fmt::format("verification failed: bound {:.3g}, row {:.3g}, dual sign {:.3g}, "
                                  "complementarity {:.3g}, gap {:.3g}",
                                  v.max_bound_violation, v.max_row_violation, v.max_dual_sign_violation,
                                  v.max_complementarity, v.duality_gap);
    }
    return sol;
}

Solution import_solution(const LinearProgram& lp, const std::filesystem::path& path, double tolerance)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    return read_solution(lp, in, tolerance);
}

}  // namespace coloexp
