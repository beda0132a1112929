#include "coloexp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coloexp
{

std::string_view to_string(RowSense sense)
{
    switch (sense)
    {
    case RowSense::Le: return "<=";
    case RowSense::Eq: return "=";
    case RowSense::Ge: return ">=";
    }
    return "?";
}

Col LinearProgram::add_variable(std::string id, double lower, double upper, double cost)
{
    if (var_index_.contains(id))
        throw std::invalid_argument("duplicate variable id: " + id);
    if (std::isnan(lower) || std::isnan(upper) || lower > upper)
        throw std::invalid_argument("invalid bounds on variable " + id);
    const std::size_t idx = variables_.size();
    var_index_.emplace(id, idx);
    variables_.push_back(Variable{std::move(id), lower, upper, cost});
    return Col{idx};
}

RowRef LinearProgram::add_row(std::string id, std::vector<Term> terms, RowSense sense, double rhs)
{
    if (row_index_.contains(id))
        throw std::invalid_argument("duplicate row id: " + id);
    for (const Term& t : terms)
    {
        if (t.col.index >= variables_.size())
            throw std::invalid_argument("row " + id + " references an unregistered variable");
    }
    // merge repeated columns, keep first-seen order
    std::vector<Term> merged;
    merged.reserve(terms.size());
    std::unordered_map<std::size_t, std::size_t> slot;
    for (const Term& t : terms)
    {
        auto [it, inserted] = slot.emplace(t.col.index, merged.size());
        if (inserted)
            merged.push_back(t);
        else
            merged[it->second].coef += t.coef;
    }
    std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });

    const std::size_t idx = rows_.size();
    row_index_.emplace(id, idx);
    rows_.push_back(Row{std::move(id), std::move(merged), sense, rhs});
    return RowRef{idx};
}

void LinearProgram::add_cost(Col col, double amount)
{
    variables_.at(col.index).cost += amount;
}

void LinearProgram::set_bounds(Col col, double lower, double upper)
{
    auto& v = variables_.at(col.index);
    if (lower > upper)
        throw std::invalid_argument("invalid bounds on variable " + v.id);
    v.lower = lower;
    v.upper = upper;
}

std::size_t LinearProgram::num_nonzeros() const
{
    std::size_t nnz = 0;
    for (const Row& r : rows_)
        nnz += r.terms.size();
    return nnz;
}

std::optional<Col> LinearProgram::find_variable(std::string_view id) const
{
    auto it = var_index_.find(std::string(id));
    if (it == var_index_.end())
        return std::nullopt;
    return Col{it->second};
}

std::optional<RowRef> LinearProgram::find_row(std::string_view id) const
{
    auto it = row_index_.find(std::string(id));
    if (it == row_index_.end())
        return std::nullopt;
    return RowRef{it->second};
}

std::vector<std::string> LinearProgram::check() const
{
    std::vector<std::string> problems;
    for (const Variable& v : variables_)
    {
        if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper)
            problems.push_back("variable " + v.id + ": lower bound exceeds upper bound");
        if (!std::isfinite(v.cost))
            problems.push_back("variable " + v.id + ": non-finite objective coefficient");
    }
    for (const Row& r : rows_)
    {
        if (!std::isfinite(r.rhs))
            problems.push_back("row " + r.id + ": non-finite right-hand side");
        for (const Term& t : r.terms)
        {
            if (t.col.index >= variables_.size())
                problems.push_back("row " + r.id + ": unregistered variable reference");
            else if (!std::isfinite(t.coef))
                problems.push_back("row " + r.id + ": non-finite coefficient");
        }
    }
    return problems;
}

double LinearProgram::activity(RowRef row, const std::vector<double>& x) const
{
    double sum = 0.0;
    for (const Term& t : rows_.at(row.index).terms)
        sum += t.coef * x.at(t.col.index);
    return sum;
}

double LinearProgram::objective_value(const std::vector<double>& x) const
{
    double sum = 0.0;
    for (std::size_t j = 0; j < variables_.size(); ++j)
        sum += variables_[j].cost * x.at(j);
    return sum;
}

bool same_program(const LinearProgram& a, const LinearProgram& b)
{
    if (a.num_variables() != b.num_variables() || a.num_rows() != b.num_rows())
        return false;
    for (std::size_t j = 0; j < a.num_variables(); ++j)
    {
        const Variable& va = a.variables()[j];
        const Variable& vb = b.variables()[j];
        if (va.id != vb.id || va.lower != vb.lower || va.upper != vb.upper || va.cost != vb.cost)
            return false;
    }
    auto sorted = [](std::vector<Term> terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& l, const Term& r) { return l.col.index < r.col.index; });
        return terms;
    };
    for (std::size_t i = 0; i < a.num_rows(); ++i)
    {
        const Row& ra = a.rows()[i];
        const Row& rb = b.rows()[i];
        if (ra.id != rb.id || ra.sense != rb.sense || ra.rhs != rb.rhs)
            return false;
        auto ta = sorted(ra.terms);
        auto tb = sorted(rb.terms);
        if (ta.size() != tb.size())
            return false;
        for (std::size_t k = 0; k < ta.size(); ++k)
        {
            if (ta[k].col != tb[k].col || ta[k].coef != tb[k].coef)
                return false;
        }
    }
    return true;
}

}  // namespace coloexp
