#pragma once

#include "coloexp/lp.hpp"
#include "coloexp/simplex.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace coloexp
{

// Free-format MPS names cannot contain whitespace. Ids are written with
// percent-encoding: every byte outside [A-Za-z0-9_./:+\-\[\]()<>=,] becomes
// %XX (upper-case hex). The mapping is a bijection on byte strings. The
// objective row is named "%OBJ", which no encoded id can produce.
std::string mangle_name(std::string_view id);
std::string demangle_name(std::string_view name);

inline constexpr std::string_view kObjectiveRowName = "%OBJ";

void write_mps(const LinearProgram& lp, std::ostream& out, std::string_view name = "COLOEXP");
void export_mps(const LinearProgram& lp, const std::filesystem::path& path);

/// Reads free-format MPS (NAME, ROWS, COLUMNS, RHS, RANGES, BOUNDS, ENDATA).
/// Ranged rows and integer markers are rejected.
LinearProgram read_mps(std::istream& in);
LinearProgram import_mps(const std::filesystem::path& path);

/// Solution CSV, header `kind,id,value`; kind is `var` (primal value) or
/// `row` (dual value, d(objective)/d(rhs)).
void write_solution(const LinearProgram& lp, const Solution& sol, std::ostream& out);
void write_solution(const LinearProgram& lp, const Solution& sol, const std::filesystem::path& path);

/// Loads a solution CSV against `lp` and re-verifies it. Missing variables
/// default to 0; when no `row` entries are present the duals are unknown and
/// only primal feasibility decides the status.
Solution import_solution(const LinearProgram& lp, const std::filesystem::path& path, double tolerance = 1e-6);
Solution read_solution(const LinearProgram& lp, std::istream& in, double tolerance = 1e-6);

}  // namespace coloexp
