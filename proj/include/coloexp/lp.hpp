#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace coloexp
{

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Index of a variable inside a LinearProgram.
struct Col
{
    std::size_t index = 0;
    friend bool operator==(Col, Col) = default;
};

/// Index of a constraint row inside a LinearProgram.
struct RowRef
{
    std::size_t index = 0;
    friend bool operator==(RowRef, RowRef) = default;
};

enum class RowSense { Le, Eq, Ge };

std::string_view to_string(RowSense sense);

struct Term
{
    Col col;
    double coef = 0.0;
};

struct Variable
{
    std::string id;
    double lower = 0.0;
    double upper = kInfinity;
    double cost = 0.0;
};

struct Row
{
    std::string id;
    std::vector<Term> terms;
    RowSense sense = RowSense::Le;
    double rhs = 0.0;
};

/// Sparse minimisation LP: min c'x s.t. rows, lower <= x <= upper.
///
/// Ids are unique per kind. Duplicate coefficients on one row are merged
/// when the row is added.
class LinearProgram
{
public:
    Col add_variable(std::string id, double lower = 0.0, double upper = kInfinity, double cost = 0.0);
    RowRef add_row(std::string id, std::vector<Term> terms, RowSense sense, double rhs);

    /// Accumulates onto the existing objective coefficient.
    void add_cost(Col col, double amount);
    void set_bounds(Col col, double lower, double upper);

    [[nodiscard]] std::size_t num_variables() const { return variables_.size(); }
    [[nodiscard]] std::size_t num_rows() const { return rows_.size(); }
    [[nodiscard]] std::size_t num_nonzeros() const;

    [[nodiscard]] const Variable& variable(Col col) const { return variables_.at(col.index); }
    [[nodiscard]] const Row& row(RowRef row) const { return rows_.at(row.index); }
    [[nodiscard]] const std::vector<Variable>& variables() const { return variables_; }
    [[nodiscard]] const std::vector<Row>& rows() const { return rows_; }

    [[nodiscard]] std::optional<Col> find_variable(std::string_view id) const;
    [[nodiscard]] std::optional<RowRef> find_row(std::string_view id) const;

    /// Problems with the LP as a list of messages; empty when well formed.
    [[nodiscard]] std::vector<std::string> check() const;

    /// Row activity a_i'x for a full primal vector.
    [[nodiscard]] double activity(RowRef row, const std::vector<double>& x) const;
    [[nodiscard]] double objective_value(const std::vector<double>& x) const;

private:
    std::vector<Variable> variables_;
    std::vector<Row> rows_;
    std::unordered_map<std::string, std::size_t> var_index_;
    std::unordered_map<std::string, std::size_t> row_index_;
};

/// Structural equality after sorting each row's terms by column.
bool same_program(const LinearProgram& a, const LinearProgram& b);

}  // namespace coloexp
