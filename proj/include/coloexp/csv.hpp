#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace coloexp::csv
{

/// One data row of a table, with the 1-based line number it came from.
struct Record
{
    std::vector<std::string> fields;
    std::size_t line = 0;
};

/// A comma-separated table with a header row. Fields may be double-quoted;
/// surrounding whitespace is trimmed. Blank lines are skipped.
class Table
{
public:
    static Table read(const std::filesystem::path& path);
    static Table parse(std::string_view text, std::string source);

    [[nodiscard]] const std::string& source() const { return source_; }
    [[nodiscard]] const std::vector<std::string>& header() const { return header_; }
    [[nodiscard]] const std::vector<Record>& records() const { return records_; }
    [[nodiscard]] bool has_column(std::string_view name) const;
    [[nodiscard]] std::optional<std::size_t> column(std::string_view name) const;
    /// Column index; throws DataError naming the file when absent.
    [[nodiscard]] std::size_t require_column(std::string_view name) const;

    /// Raw cell text; empty when the column is absent.
    [[nodiscard]] std::string cell(const Record& rec, std::string_view name) const;

    /// Numeric cell. Throws DataError with file:line on malformed content.
    [[nodiscard]] double number(const Record& rec, std::string_view name) const;
    /// Numeric cell, `fallback` when the column is absent or the cell empty.
    [[nodiscard]] double number_or(const Record& rec, std::string_view name, double fallback) const;
    /// Empty cell or missing column reads as nullopt.
    [[nodiscard]] std::optional<double> optional_number(const Record& rec, std::string_view name) const;
    [[nodiscard]] long integer(const Record& rec, std::string_view name) const;
    [[nodiscard]] bool boolean_or(const Record& rec, std::string_view name, bool fallback) const;

    [[noreturn]] void fail(const Record& rec, const std::string& what) const;

private:
    std::string source_;
    std::vector<std::string> header_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Record> records_;
};

std::vector<std::string> split_line(std::string_view line);
std::string trim(std::string_view s);

/// Parses a full-string double; nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view s);

/// Shortest-form text for a double at `digits` significant digits; used for
/// every number in written reports so output is byte-stable.
std::string format_number(double value, int digits = 12);

/// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);

}  // namespace coloexp::csv
