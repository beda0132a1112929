#pragma once

// Brute-force LP oracle: enumerate every choice of n active constraints
// (rows as equalities, variable bounds), solve the square system by
// Gaussian elimination and keep the best feasible vertex. Only valid for
// bounded feasible regions (all variable bounds finite). Shares no code
// with the simplex solver.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace oracle
{

struct DenseLp
{
    // senses: -1 for <=, 0 for =, +1 for >=
    std::vector<std::vector<double>> a;
    std::vector<int> sense;
    std::vector<double> b;
    std::vector<double> c;
    std::vector<double> lower;
    std::vector<double> upper;
};

struct VertexResult
{
    bool feasible = false;
    double objective = std::numeric_limits<double>::infinity();
    std::vector<double> x;
};

inline std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> m, std::vector<double> rhs)
{
    const std::size_t n = rhs.size();
    for (std::size_t k = 0; k < n; ++k)
    {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
        {
            if (std::abs(m[i][k]) > std::abs(m[piv][k]))
                piv = i;
        }
        if (std::abs(m[piv][k]) < 1e-10)
            return std::nullopt;
        std::swap(m[piv], m[k]);
        std::swap(rhs[piv], rhs[k]);
        for (std::size_t i = k + 1; i < n; ++i)
        {
            const double f = m[i][k] / m[k][k];
            if (f == 0.0)
                continue;
            for (std::size_t j = k; j < n; ++j)
                m[i][j] -= f * m[k][j];
            rhs[i] -= f * rhs[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t k = n; k-- > 0;)
    {
        double s = rhs[k];
        for (std::size_t j = k + 1; j < n; ++j)
            s -= m[k][j] * x[j];
        x[k] = s / m[k][k];
    }
    return x;
}

inline bool feasible_point(const DenseLp& lp, const std::vector<double>& x, double tol)
{
    for (std::size_t j = 0; j < x.size(); ++j)
    {
        if (x[j] < lp.lower[j] - tol || x[j] > lp.upper[j] + tol)
            return false;
    }
    for (std::size_t i = 0; i < lp.a.size(); ++i)
    {
        double act = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j)
            act += lp.a[i][j] * x[j];
        const double scale = 1.0 + std::abs(lp.b[i]);
        if (lp.sense[i] <= 0 && act > lp.b[i] + tol * scale)
            return false;
        if (lp.sense[i] >= 0 && act < lp.b[i] - tol * scale)
            return false;
    }
    return true;
}

inline VertexResult enumerate_vertices(const DenseLp& lp, double tol = 1e-8)
{
    const std::size_t n = lp.c.size();
    const std::size_t m = lp.a.size();
    // constraint k: k < m is row k; otherwise bound (k - m) / 2, lower when even
    const std::size_t total = m + 2 * n;
    VertexResult best;
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i)
        pick[i] = i;

    while (true)
    {
        std::vector<std::vector<double>> mat(n, std::vector<double>(n, 0.0));
        std::vector<double> rhs(n);
        for (std::size_t r = 0; r < n; ++r)
        {
            const std::size_t k = pick[r];
            if (k < m)
            {
                mat[r] = lp.a[k];
                rhs[r] = lp.b[k];
            }
            else
            {
                const std::size_t j = (k - m) / 2;
                mat[r][j] = 1.0;
                rhs[r] = ((k - m) % 2 == 0) ? lp.lower[j] : lp.upper[j];
            }
        }
        if (auto x = solve_square(mat, rhs); x && feasible_point(lp, *x, tol))
        {
            double obj = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                obj += lp.c[j] * (*x)[j];
            if (!best.feasible || obj < best.objective)
            {
                best.feasible = true;
                best.objective = obj;
                best.x = *x;
            }
        }

        // next combination in lexicographic order
        std::size_t i = n;
        while (i > 0 && pick[i - 1] == total - n + (i - 1))
            --i;
        if (i == 0)
            break;
        ++pick[i - 1];
        for (std::size_t j = i; j < n; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return best;
}

}  // namespace oracle
