#pragma once

#include "coloexp/lp.hpp"
#include "coloexp/simplex.hpp"
#include "oracles/vertex_enumeration.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace testing
{

inline std::filesystem::path source_dir()
{
    return std::filesystem::path(COLOEXP_SOURCE_DIR);
}

inline std::filesystem::path fixture(const std::string& name)
{
    return source_dir() / "tests" / "fixtures" / name;
}

/// Fresh empty scratch directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& name)
{
    auto dir = std::filesystem::path(COLOEXP_BINARY_DIR) / "scratch" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline coloexp::LinearProgram to_program(const oracle::DenseLp& d)
{
    coloexp::LinearProgram lp;
    std::vector<coloexp::Col> cols;
    for (std::size_t j = 0; j < d.c.size(); ++j)
        cols.push_back(lp.add_variable("x" + std::to_string(j), d.lower[j], d.upper[j], d.c[j]));
    for (std::size_t i = 0; i < d.a.size(); ++i)
    {
        std::vector<coloexp::Term> terms;
        for (std::size_t j = 0; j < d.c.size(); ++j)
        {
            if (d.a[i][j] != 0.0)
                terms.push_back({cols[j], d.a[i][j]});
        }
        const auto sense = d.sense[i] < 0 ? coloexp::RowSense::Le
                                          : (d.sense[i] > 0 ? coloexp::RowSense::Ge : coloexp::RowSense::Eq);
        lp.add_row("r" + std::to_string(i), std::move(terms), sense, d.b[i]);
    }
    return lp;
}

/// Random bounded LP with integer-ish data. About a third of the draws are
/// built around a feasible interior point; the rest are unconstrained draws
/// that are often infeasible.
inline oracle::DenseLp random_lp(std::mt19937& rng, std::size_t n, std::size_t m)
{
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> cost(-10, 10);
    std::uniform_int_distribution<int> sense(-1, 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    oracle::DenseLp d;
    d.c.resize(n);
    d.lower.resize(n);
    d.upper.resize(n);
    std::vector<double> x0(n);
    for (std::size_t j = 0; j < n; ++j)
    {
        d.c[j] = cost(rng);
        d.lower[j] = -std::floor(3.0 * unit(rng));
        d.upper[j] = d.lower[j] + 1.0 + std::floor(5.0 * unit(rng));
        x0[j] = d.lower[j] + unit(rng) * (d.upper[j] - d.lower[j]);
    }
    const bool anchored = unit(rng) < 0.7;
    for (std::size_t i = 0; i < m; ++i)
    {
        std::vector<double> row(n);
        double act = 0.0;
        for (std::size_t j = 0; j < n; ++j)
        {
            row[j] = coef(rng);
            act += row[j] * x0[j];
        }
        int s = sense(rng);
        double rhs = 0.0;
        if (anchored)
        {
            if (s == 0)
                rhs = act;
            else
                rhs = std::round(act + s * -1.0 * (0.5 + 3.0 * unit(rng)));
            if (s == 0)
            {
                // keep equalities exact at an anchored point with round data
                rhs = std::round(act);
                if (unit(rng) < 0.5)
                    s = -1;
            }
        }
        else
        {
            rhs = std::round(-8.0 + 16.0 * unit(rng));
        }
        d.a.push_back(row);
        d.sense.push_back(s);
        d.b.push_back(rhs);
    }
    return d;
}

/// Optimality certificate on the returned solution.
inline bool certificate_ok(const coloexp::LinearProgram& lp, const coloexp::Solution& sol, double tol = 1e-6)
{
    const auto v = coloexp::verify(lp, sol.primal, sol.duals);
    double cmax = 1.0;
    for (const auto& var : lp.variables())
        cmax = std::max(cmax, std::abs(var.cost));
    return v.primal_feasible(tol) && v.max_dual_sign_violation <= tol * cmax &&
           v.max_complementarity <= tol * cmax && v.duality_gap <= tol;
}

}  // namespace testing
