#include "coloexp/csv.hpp"

#include "coloexp/errors.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace coloexp::csv
{

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_line(std::string_view line)
{
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        const char c = line[i];
        if (quoted)
        {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
            {
                field.push_back('"');
                ++i;
            }
            else if (c == '"')
            {
                quoted = false;
            }
            else
            {
                field.push_back(c);
            }
        }
        else if (c == '"')
        {
            quoted = true;
            was_quoted = true;
        }
        else if (c == ',')
        {
            out.push_back(was_quoted ? field : trim(field));
            field.clear();
            was_quoted = false;
        }
        else
        {
            field.push_back(c);
        }
    }
    out.push_back(was_quoted ? field : trim(field));
    return out;
}

Table Table::read(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.string());
}

Table Table::parse(std::string_view text, std::string source)
{
    Table t;
    t.source_ = std::move(source);
    // strip a UTF-8 byte-order mark
    if (text.starts_with("\xEF\xBB\xBF"))
        text.remove_prefix(3);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool have_header = false;
    while (pos <= text.size())
    {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        pos = end + 1;
        if (trim(line).empty())
        {
            if (end == text.size())
                break;
            continue;
        }
        auto fields = split_line(line);
        if (!have_header)
        {
            t.header_ = fields;
            for (std::size_t i = 0; i < fields.size(); ++i)
                t.index_.emplace(fields[i], i);
            have_header = true;
        }
        else
        {
            if (fields.size() != t.header_.size())
            {
                throw DataError(fmt::format("{}:{}: expected {} fields, found {}", t.source_, line_no,
                                            t.header_.size(), fields.size()));
            }
            t.records_.push_back(Record{std::move(fields), line_no});
        }
        if (end == text.size())
            break;
    }
    if (!have_header)
        throw DataError(t.source_ + ": missing header row");
    return t;
}

bool Table::has_column(std::string_view name) const
{
    return index_.contains(std::string(name));
}

std::optional<std::size_t> Table::column(std::string_view name) const
{
    auto it = index_.find(std::string(name));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::size_t Table::require_column(std::string_view name) const
{
    auto c = column(name);
    if (!c)
        throw DataError(fmt::format("{}:1: missing column '{}'", source_, name));
    return *c;
}

std::string Table::cell(const Record& rec, std::string_view name) const
{
    auto c = column(name);
    return c ? rec.fields[*c] : std::string{};
}

void Table::fail(const Record& rec, const std::string& what) const
{
    throw DataError(fmt::format("{}:{}: {}", source_, rec.line, what));
}

std::optional<double> parse_double(std::string_view s)
{
    const std::string t = trim(s);
    if (t.empty())
        return std::nullopt;
    double v = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (*first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        return std::nullopt;
    return v;
}

double Table::number(const Record& rec, std::string_view name) const
{
    const std::size_t c = require_column(name);
    auto v = parse_double(rec.fields[c]);
    if (!v)
        fail(rec, fmt::format("column '{}': '{}' is not a number", name, rec.fields[c]));
    return *v;
}

double Table::number_or(const Record& rec, std::string_view name, double fallback) const
{
    auto v = optional_number(rec, name);
    return v ? *v : fallback;
}

std::optional<double> Table::optional_number(const Record& rec, std::string_view name) const
{
    auto c = column(name);
    if (!c || trim(rec.fields[*c]).empty())
        return std::nullopt;
    auto v = parse_double(rec.fields[*c]);
    if (!v)
        fail(rec, fmt::format("column '{}': '{}' is not a number", name, rec.fields[*c]));
    return v;
}

long Table::integer(const Record& rec, std::string_view name) const
{
    const double v = number(rec, name);
    if (v != std::floor(v))
        fail(rec, fmt::format("column '{}': expected an integer", name));
    return static_cast<long>(v);
}

bool Table::boolean_or(const Record& rec, std::string_view name, bool fallback) const
{
    const std::string s = trim(cell(rec, name));
    if (s.empty())
        return fallback;
    if (s == "1" || s == "true" || s == "TRUE" || s == "yes")
        return true;
    if (s == "0" || s == "false" || s == "FALSE" || s == "no")
        return false;
    fail(rec, fmt::format("column '{}': '{}' is not a boolean", name, s));
}

std::string format_number(double value, int digits)
{
    if (value == 0.0)
        return "0";  // folds -0
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    return fmt::format("{:.{}g}", value, digits);
}

std::string escape(std::string_view field)
{
    if (field.find_first_of(",\"\n") == std::string_view::npos)
        return std::string(field);
    std::string out = "\"";
    for (char c : field)
    {
        if (c == '"')
            out += "\"\"";
        else
            out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace coloexp::csv
