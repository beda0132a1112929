#include "coloexp/cost_pipeline.hpp"
#include "coloexp/errors.hpp"

#include "support.hpp"
#include "toys.hpp"

#include <doctest.h>

#include <cmath>

using namespace coloexp;
using namespace coloexp::costs;
using K = ComponentKind;

namespace
{

// Annuity payment from the present-value series sum, in long double.
double crf_by_series(double wacc, int years)
{
    long double pv = 0.0L;
    long double discount = 1.0L;
    for (int k = 1; k <= years; ++k)
    {
        discount /= 1.0L + static_cast<long double>(wacc);
        pv += discount;
    }
    return static_cast<double>(1.0L / pv);
}

double round2(double v)
{
    return std::round(v * 100.0) / 100.0;
}

CostInputs inputs()
{
    return load_cost_inputs(testing::source_dir() / "data" / "costs");
}

}  // namespace

TEST_CASE("capital recovery factor agrees with the annuity series")
{
    for (double w : {0.01, 0.025, 0.032, 0.044, 0.07})
    {
        for (int years : {1, 5, 15, 30, 60})
        {
            CAPTURE(w);
            CAPTURE(years);
            CHECK(capital_recovery_factor(w, years) == doctest::Approx(crf_by_series(w, years)).epsilon(1e-12));
        }
    }
}

TEST_CASE("annuitize")
{
    const FinanceParams solar{0.025, 30.0, 1.0};
    const double a = annuitize(710.0, solar);
    CHECK(a == doctest::Approx(710.0 * crf_by_series(0.025, 30)).epsilon(1e-12));
    CHECK(a == doctest::Approx(33.9).epsilon(1e-3));

    // a very long life leaves only the interest
    CHECK(annuitize(1000.0, {0.025, 10'000.0, 1.0}) == doctest::Approx(25.0).epsilon(1e-9));

    CHECK(annuitize(710.0, {0.025, 30.0, 1.1}) == doctest::Approx(1.1 * a).epsilon(1e-15));

    for (double w = 0.01; w < 0.1; w += 0.01)
    {
        for (double years : {10.0, 20.0, 40.0})
        {
            const FinanceParams f{w, years, 1.0};
            CHECK(annuitize(300.0, f) + annuitize(200.0, f) == doctest::Approx(annuitize(500.0, f)));
            CHECK(annuitize(500.0, {w + 0.005, years, 1.0}) > annuitize(500.0, f));
        }
    }
}

TEST_CASE("2021 breakdown sums")
{
    const auto in = inputs();
    CHECK(in.breakdown.items.size() == 15);
    CHECK(in.breakdown.pv_total() == doctest::Approx(83.2));
    CHECK(in.breakdown.storage_total() == doctest::Approx(85.4));
    CHECK(in.breakdown.inverter_total() == doctest::Approx(5.5));
}

TEST_CASE("DC and AC per-unit costs")
{
    const auto u = split_dc_ac(inputs().breakdown);
    CHECK(round2(u.pv_dc_per_mw) == doctest::Approx(0.83));
    CHECK(std::abs(u.storage_per_mwh - 0.35) < 0.01);
    CHECK(round2(u.inverter_per_mw_ac) == doctest::Approx(0.07));
    CHECK(round2(u.pv_dc_ac_ratio) == doctest::Approx(0.73));
    CHECK(round2(u.storage_dc_ac_ratio) == doctest::Approx(0.95));

    auto broken = inputs().breakdown;
    broken.inverter_basis_mw_ac = 0.0;
    CHECK_THROWS_AS(split_dc_ac(broken), DataError);
}

TEST_CASE("tax credits")
{
    AnnualizedCostTable t;
    t.case_name = "x";
    t.entries = {{"solar", K::Pv, 100.0, 10.0, 0.0, false, "PV"},
                 {"solar", K::StorageEnergy, 261.0, 6.5, 0.0, false, "Battery"},
                 {"wind", K::Wind, 90.0, 40.0, 1.0, false, "Wind"},
                 {"solar", K::Grid, 5.0, 0.0, 0.0, true, "PV"}};

    SUBCASE("production and investment credits")
    {
        const TaxPolicy p = {{"solar", {12.7, 0.0}}, {"wind", {13.5, 0.0}}, {"storage", {0.0, 0.351}}};
        const auto out = apply_tax_credits(t, p);
        CHECK(out.find("solar", K::Pv)->vom == doctest::Approx(-12.7));
        CHECK(out.find("wind", K::Wind)->vom == doctest::Approx(1.0 - 13.5));
        CHECK(out.find("solar", K::StorageEnergy)->invest == doctest::Approx(261.0 * 0.649));
        CHECK(out.find("solar", K::StorageEnergy)->invest == doctest::Approx(169.389));
        CHECK(out.find("solar", K::Pv)->invest == 100.0);
        CHECK(out.find("solar", K::Grid)->invest == 5.0);
    }
    SUBCASE("no policy passes through")
    {
        const auto out = apply_tax_credits(t, {});
        REQUIRE(out.entries.size() == t.entries.size());
        for (std::size_t i = 0; i < t.entries.size(); ++i)
        {
            CHECK(out.entries[i].invest == t.entries[i].invest);
            CHECK(out.entries[i].fom == t.entries[i].fom);
            CHECK(out.entries[i].vom == t.entries[i].vom);
        }
    }
    SUBCASE("both credits on one technology")
    {
        CHECK_THROWS_AS(apply_tax_credits(t, {{"solar", {12.7, 0.3}}}), DataError);
    }
    SUBCASE("investment credit above one floors at zero")
    {
        const auto out = apply_tax_credits(t, {{"storage", {0.0, 1.5}}});
        CHECK(out.find("solar", K::StorageEnergy)->invest == 0.0);
    }
}

TEST_CASE("cost case endpoints pass through")
{
    const auto in = inputs();
    const std::map<std::string, std::pair<double, double>> endpoints = {
        {"solar_capex", {710, 771}},   {"wind_capex", {1138, 1308}}, {"battery_capex", {261, 290}},
        {"inverter_capex", {60, 83}},  {"solar_fom", {16.2, 17.3}},  {"grid_capex", {2.9, 2.9}}};
    const auto low = overnight_costs(in, "low");
    const auto mid = overnight_costs(in, "mid");
    for (const auto& [key, pair] : endpoints)
    {
        CAPTURE(key);
        CHECK(low.at(key) == pair.first);
        CHECK(mid.at(key) == pair.second);
    }
}

TEST_CASE("annualized tables follow from the endpoints")
{
    const auto in = inputs();
    const auto cases = build_cost_cases(in);
    REQUIRE(cases.size() == 2);
    const auto& low = cases.at("low");
    const auto& mid = cases.at("mid");

    const auto* pv = low.find("solar", K::Pv);
    REQUIRE(pv != nullptr);
    CHECK(pv->invest == doctest::Approx(710.0 * 1000.0 * crf_by_series(0.025, 30)));
    CHECK(pv->fom == doctest::Approx(16'200.0));
    CHECK(pv->vom == doctest::Approx(-12.7));

    const auto* bat = low.find("standalone_storage", K::StorageEnergy);
    REQUIRE(bat != nullptr);
    CHECK(bat->invest == doctest::Approx(261.0 * 1000.0 * 0.649 * crf_by_series(0.025, 15)));

    const auto* grid = low.find("wind", K::Grid);
    REQUIRE(grid != nullptr);
    CHECK(grid->per_km);
    CHECK(grid->invest == doctest::Approx(2.9 * 1000.0 * crf_by_series(0.044, 60)));

    for (const auto& e : low.entries)
    {
        const auto* m = mid.find(e.context, e.component);
        REQUIRE(m != nullptr);
        CAPTURE(e.context);
        CAPTURE(to_string(e.component));
        CHECK(e.invest <= m->invest + 1e-9);
        CHECK(e.fom <= m->fom + 1e-9);
    }
}

TEST_CASE("decline factors stand in for endpoints")
{
    CostCaseRow row;
    row.base_2021 = 1000.0;
    row.decline_low = 0.3;
    CHECK(row.value("low", "k") == doctest::Approx(700.0));
    CHECK_THROWS_AS(static_cast<void>(row.value("mid", "k")), DataError);

    auto in = inputs();
    in.cases.at("wind_capex") = CostCaseRow{};
    CHECK_THROWS_AS(build_cost_cases(in), DataError);
}

TEST_CASE("cost table round trip")
{
    const auto tables = build_cost_cases(inputs());
    const auto dir = testing::scratch_dir("cost_table");
    write_cost_table(tables.at("mid"), dir / "t.csv");
    const auto back = read_cost_table(dir / "t.csv", "mid");
    REQUIRE(back.entries.size() == tables.at("mid").entries.size());
    for (std::size_t i = 0; i < back.entries.size(); ++i)
    {
        const auto& a = tables.at("mid").entries[i];
        const auto& b = back.entries[i];
        CHECK(a.context == b.context);
        CHECK(a.component == b.component);
        CHECK(a.invest == b.invest);
        CHECK(a.fom == b.fom);
        CHECK(a.vom == b.vom);
        CHECK(a.per_km == b.per_km);
        CHECK(a.regional_class == b.regional_class);
    }
}

TEST_CASE("applying a case prices each site by its context")
{
    const auto table = build_cost_cases(inputs()).at("low");
    auto sys = toys::hybrid_six_hours();
    sys.colo_resources.push_back(toys::ac_storage_site("bat", "Z", 12.0));
    CHECK(site_context(sys.colo_resources[0]) == "solar");
    CHECK(site_context(sys.colo_resources[1]) == "standalone_storage");

    RegionalAdjustments regional;
    regional.multiplier[{"Z", "PV"}] = 1.1;
    regional.grid_rate_scale["Z"] = 2.0;
    const auto out = apply_cost_case(sys, table, regional);

    const auto& hyb = out.colo_resources[0];
    CHECK(hyb.param(K::Pv).invest_cost == doctest::Approx(1.1 * table.find("solar", K::Pv)->invest));
    CHECK(hyb.param(K::StorageEnergy).invest_cost == doctest::Approx(table.find("solar", K::StorageEnergy)->invest));
    CHECK(hyb.param(K::Grid).invest_cost ==
          doctest::Approx(table.find("solar", K::Grid)->invest * 1.1 * 40.0 * 2.0));
    const auto& bat = out.colo_resources[1];
    CHECK(bat.param(K::Grid).invest_cost ==
          doctest::Approx(table.find("standalone_storage", K::Grid)->invest * 1.1 * 12.0 * 2.0));
    // components absent from the table keep their costs
    CHECK(out.thermal_resources == sys.thermal_resources);
}
