#include "coloexp/simplex.hpp"
#include "support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>

using namespace coloexp;

TEST_CASE("textbook two-variable LP")
{
    LinearProgram lp;
    const Col x = lp.add_variable("x", 0, 1, -1);
    const Col y = lp.add_variable("y", 0, 1, -1);
    lp.add_row("cap", {{x, 1}, {y, 1}}, RowSense::Le, 1);

    const Solution sol = solve(lp);
    REQUIRE(sol.optimal());
    CHECK(sol.objective == doctest::Approx(-1.0));
    CHECK(sol.dual(lp, "cap") == doctest::Approx(-1.0));
    CHECK(sol.primal[0] + sol.primal[1] == doctest::Approx(1.0));
    CHECK(testing::certificate_ok(lp, sol));
}

TEST_CASE("infeasible bound against row")
{
    LinearProgram lp;
    const Col x = lp.add_variable("x", 0, kInfinity, 1);
    lp.add_row("neg", {{x, 1}}, RowSense::Le, -1);
    CHECK(solve(lp).status == SolveStatus::Infeasible);
}

TEST_CASE("unbounded direction")
{
    LinearProgram lp;
    const Col x = lp.add_variable("x", 0, kInfinity, -1);
    const Col y = lp.add_variable("y", 0, kInfinity, 0);
    lp.add_row("r", {{x, 1}, {y, -1}}, RowSense::Le, 2);
    CHECK(solve(lp).status == SolveStatus::Unbounded);
}

TEST_CASE("free variables and equality rows")
{
    // x = (s + d) / 2, y = (s - d) / 2 at the optimum, objective 1.5 s - 0.5 d
    LinearProgram lp;
    const Col x = lp.add_variable("x", -kInfinity, kInfinity, 1);
    const Col y = lp.add_variable("y", -kInfinity, kInfinity, 2);
    lp.add_row("sum", {{x, 1}, {y, 1}}, RowSense::Eq, 3);
    lp.add_row("diff", {{x, 1}, {y, -1}}, RowSense::Le, 1);
    const Solution sol = solve(lp);
    REQUIRE(sol.optimal());
    CHECK(sol.objective == doctest::Approx(4.0));
    CHECK(sol.value(lp, "x") == doctest::Approx(2.0));
    CHECK(sol.value(lp, "y") == doctest::Approx(1.0));
    CHECK(sol.dual(lp, "sum") == doctest::Approx(1.5));
    CHECK(sol.dual(lp, "diff") == doctest::Approx(-0.5));
    CHECK(testing::certificate_ok(lp, sol));
}

TEST_CASE("iteration limit is reported")
{
    LinearProgram lp;
    std::vector<Col> xs;
    for (int j = 0; j < 6; ++j)
        xs.push_back(lp.add_variable("x" + std::to_string(j), 0, 10, -1.0 - j));
    std::vector<Term> terms;
    for (auto c : xs)
        terms.push_back({c, 1.0});
    lp.add_row("cap", terms, RowSense::Le, 25);
    SolverOptions opt;
    opt.max_iterations = 1;
    CHECK(solve(lp, opt).status == SolveStatus::IterationLimit);
}

TEST_CASE("random small LPs agree with vertex enumeration")
{
    std::mt19937 rng(7);
    int optimal = 0;
    int infeasible = 0;
    for (int trial = 0; trial < 60; ++trial)
    {
        const std::size_t n = 2 + rng() % 5;
        const std::size_t m = 1 + rng() % 5;
        const auto dense = testing::random_lp(rng, n, m);
        const auto lp = testing::to_program(dense);
        const auto ref = oracle::enumerate_vertices(dense);
        const Solution sol = solve(lp);
        CAPTURE(trial);
        if (!ref.feasible)
        {
            CHECK(sol.status == SolveStatus::Infeasible);
            ++infeasible;
            continue;
        }
        REQUIRE(sol.optimal());
        CHECK(std::abs(sol.objective - ref.objective) <= 1e-6 * (1.0 + std::abs(ref.objective)));
        CHECK(testing::certificate_ok(lp, sol));
        ++optimal;
    }
    CHECK(optimal > 20);
    CHECK(infeasible > 1);
}

TEST_CASE("dense 20x20 LPs match frozen HiGHS optima")
{
    std::ifstream in(testing::source_dir() / "tests" / "data" / "dense20.json");
    REQUIRE(in);
    const auto cases = nlohmann::json::parse(in);
    REQUIRE(cases.size() == 20);
    for (const auto& c : cases)
    {
        oracle::DenseLp d;
        d.c = c["c"].get<std::vector<double>>();
        d.a = c["A"].get<std::vector<std::vector<double>>>();
        d.b = c["b"].get<std::vector<double>>();
        d.lower = c["lb"].get<std::vector<double>>();
        d.upper = c["ub"].get<std::vector<double>>();
        for (const auto& s : c["senses"])
            d.sense.push_back(s == "L" ? -1 : (s == "G" ? 1 : 0));
        const auto lp = testing::to_program(d);
        const Solution sol = solve(lp);
        REQUIRE(sol.optimal());
        const double ref = c["objective"].get<double>();
        CHECK(std::abs(sol.objective - ref) <= 1e-6 * (1.0 + std::abs(ref)));
        CHECK(testing::certificate_ok(lp, sol));
    }
}

TEST_CASE("objective scaling scales duals and keeps the argmin")
{
    LinearProgram lp;
    const Col x = lp.add_variable("x", 0, 10, -3);
    const Col y = lp.add_variable("y", 0, 10, -2);
    lp.add_row("a", {{x, 1}, {y, 1}}, RowSense::Le, 4);
    lp.add_row("b", {{x, 1}, {y, 3}}, RowSense::Le, 6);
    lp.add_row("c", {{x, 2}, {y, 1}}, RowSense::Le, 7);
    const Solution base = solve(lp);
    REQUIRE(base.optimal());

    for (double k : {0.5, 3.0, 1000.0})
    {
        LinearProgram scaled = lp;
        for (std::size_t j = 0; j < scaled.num_variables(); ++j)
            scaled.add_cost(Col{j}, (k - 1.0) * lp.variables()[j].cost);
        const Solution s = solve(scaled);
        REQUIRE(s.optimal());
        CHECK(s.objective == doctest::Approx(k * base.objective));
        for (std::size_t j = 0; j < lp.num_variables(); ++j)
            CHECK(s.primal[j] == doctest::Approx(base.primal[j]));
        for (std::size_t i = 0; i < lp.num_rows(); ++i)
            CHECK(s.duals[i] == doctest::Approx(k * base.duals[i]));
    }
}

TEST_CASE("repeat solves are bit-identical")
{
    std::mt19937 rng(11);
    const auto dense = testing::random_lp(rng, 6, 6);
    const auto lp = testing::to_program(dense);
    const Solution a = solve(lp);
    const Solution b = solve(lp);
    CHECK(a.status == b.status);
    CHECK(a.primal == b.primal);
    CHECK(a.duals == b.duals);
    CHECK(a.reduced_costs == b.reduced_costs);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("degenerate LP terminates")
{
    // Beale-style cycling example for Dantzig pricing without anti-cycling
    LinearProgram lp;
    const Col x1 = lp.add_variable("x1", 0, kInfinity, -0.75);
    const Col x2 = lp.add_variable("x2", 0, kInfinity, 150);
    const Col x3 = lp.add_variable("x3", 0, kInfinity, -0.02);
    const Col x4 = lp.add_variable("x4", 0, kInfinity, 6);
    lp.add_row("r1", {{x1, 0.25}, {x2, -60}, {x3, -0.04}, {x4, 9}}, RowSense::Le, 0);
    lp.add_row("r2", {{x1, 0.5}, {x2, -90}, {x3, -0.02}, {x4, 3}}, RowSense::Le, 0);
    lp.add_row("r3", {{x3, 1}}, RowSense::Le, 1);
    const Solution sol = solve(lp);
    REQUIRE(sol.optimal());
    CHECK(sol.objective == doctest::Approx(-0.05));
    CHECK(testing::certificate_ok(lp, sol));
}
