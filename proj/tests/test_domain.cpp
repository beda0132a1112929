#include "coloexp/domain.hpp"
#include "coloexp/errors.hpp"
#include "support.hpp"

#include <doctest.h>

#include <fstream>
#include <functional>

using namespace coloexp;

namespace
{

std::filesystem::path copy_fixture(const std::string& name, const std::string& scratch)
{
    const auto dir = testing::scratch_dir(scratch);
    std::filesystem::copy(testing::fixture(name), dir, std::filesystem::copy_options::recursive);
    return dir;
}

void overwrite(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream(path, std::ios::binary) << text;
}

std::string error_of(const std::function<void()>& fn)
{
    try
    {
        fn();
    }
    catch (const std::exception& e)
    {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("one-zone fixture loads with defaults applied")
{
    const auto sys = load_system(testing::fixture("one_zone"));
    CHECK(sys.zones.size() == 1);
    CHECK(sys.colo_resources.size() == 1);
    CHECK(sys.horizon == 4);
    CHECK(sys.zones[0].demand == std::vector<double>{40, 55, 70, 50});

    const auto& r = sys.colo_resources[0];
    CHECK(r.has(ComponentKind::Pv));
    CHECK(r.has_dc_storage());
    CHECK_FALSE(r.has_ac_storage());
    CHECK(r.components.size() == 6);
    CHECK(r.param(ComponentKind::Pv).max_capacity == 200);
    CHECK(r.param(ComponentKind::Grid).max_capacity == kInfinity);
    CHECK(r.param(ComponentKind::Pv).vom_cost == -5);
    CHECK(r.ilr_pv == kFreeRatio);
    CHECK(r.cf_pv == std::vector<double>{0, 0.6, 0.9, 0.3});
    CHECK(r.cf_wind.empty());
    CHECK(r.symmetric_dc);

    REQUIRE(sys.thermal_resources.size() == 1);
    CHECK(sys.thermal_resources[0].max_new == kInfinity);
    CHECK_FALSE(sys.forced_battery_mw.has_value());
    CHECK(sys.nse_cost == 50000);
}

TEST_CASE("short capacity-factor series names the file")
{
    const auto dir = copy_fixture("one_zone", "short_cf");
    overwrite(dir / "colo_capacity_factors.csv", "resource,t,cf_pv,cf_wind\nhyb,1,0,\nhyb,2,0.5,\nhyb,3,0.5,\n");
    const auto msg = error_of([&] { (void)load_system(dir); });
    CHECK(msg.find("colo_capacity_factors.csv") != std::string::npos);
    CHECK(msg.find("3 of 4") != std::string::npos);
}

TEST_CASE("unknown zone reference is reported with file and line")
{
    const auto dir = copy_fixture("one_zone", "unknown_zone");
    overwrite(dir / "thermal.csv", "id,zone,existing_mw\ngas,XX,10\n");
    const auto msg = error_of([&] { (void)load_system(dir); });
    CHECK(msg.find("thermal.csv:2") != std::string::npos);
    CHECK(msg.find("unknown zone 'XX'") != std::string::npos);
}

TEST_CASE("missing required file is an I/O error")
{
    const auto dir = copy_fixture("one_zone", "missing_file");
    std::filesystem::remove(dir / "demand.csv");
    CHECK_THROWS_AS((void)load_system(dir), IoError);
}

TEST_CASE("malformed and negative values are rejected")
{
    const auto dir = copy_fixture("one_zone", "malformed");
    overwrite(dir / "demand.csv", "zone,t,mwh\nZ1,1,40\nZ1,2,abc\nZ1,3,1\nZ1,4,1\n");
    CHECK(error_of([&] { (void)load_system(dir); }).find("demand.csv:3") != std::string::npos);
    overwrite(dir / "demand.csv", "zone,t,mwh\nZ1,1,40\nZ1,2,-1\nZ1,3,1\nZ1,4,1\n");
    CHECK(error_of([&] { (void)load_system(dir); }).find("negative") != std::string::npos);
    overwrite(dir / "demand.csv", "zone,t,mwh\nZ1,1,40\nZ1,1,41\nZ1,3,1\nZ1,4,1\n");
    CHECK(error_of([&] { (void)load_system(dir); }).find("duplicate hour") != std::string::npos);
}

TEST_CASE("validate reports one violation per broken invariant")
{
    const auto base = load_system(testing::fixture("one_zone"));
    CHECK(validate(base).empty());

    SUBCASE("inverter efficiency above one")
    {
        auto sys = base;
        sys.colo_resources[0].inverter_efficiency = 1.2;
        const auto v = validate(sys);
        REQUIRE(v.size() == 1);
        CHECK(v[0].field == "inverter_efficiency");
        CHECK(v[0].rule == "out of (0,1]");
        CHECK(v[0].entity == "colo_resource:hyb");
    }
    SUBCASE("min above max")
    {
        auto sys = base;
        sys.colo_resources[0].param(ComponentKind::Pv).min_capacity = 50;
        sys.colo_resources[0].param(ComponentKind::Pv).max_capacity = 10;
        const auto v = validate(sys);
        REQUIRE(v.size() == 1);
        CHECK(v[0].field == "pv_min");
    }
}

TEST_CASE("each invariant has a detecting rule")
{
    const auto base = load_system(testing::fixture("one_zone"));
    using Mutator = std::function<void(SystemDescription&)>;
    const std::vector<std::pair<const char*, Mutator>> cases = {
        {"negative demand", [](auto& s) { s.zones[0].demand[1] = -1; }},
        {"demand length", [](auto& s) { s.zones[0].demand.pop_back(); }},
        {"zero horizon", [](auto& s) { s.horizon = 0; }},
        {"eta dc charge zero", [](auto& s) { s.colo_resources[0].eta_dc_charge = 0; }},
        {"self discharge one", [](auto& s) { s.colo_resources[0].self_discharge = 1.0; }},
        {"cf above one", [](auto& s) { s.colo_resources[0].cf_pv[2] = 1.5; }},
        {"cf length", [](auto& s) { s.colo_resources[0].cf_pv.pop_back(); }},
        {"storage without path",
         [](auto& s) {
             s.colo_resources[0].components.erase(ComponentKind::ChargeDc);
             s.colo_resources[0].components.erase(ComponentKind::DischargeDc);
         }},
        {"pv without inverter", [](auto& s) { s.colo_resources[0].components.erase(ComponentKind::Inverter); }},
        {"no grid", [](auto& s) { s.colo_resources[0].components.erase(ComponentKind::Grid); }},
        {"unknown zone", [](auto& s) { s.colo_resources[0].zone = "XX"; }},
        {"thermal unknown zone", [](auto& s) { s.thermal_resources[0].zone = "XX"; }},
        {"negative thermal cost", [](auto& s) { s.thermal_resources[0].invest_cost = -1; }},
        {"bad ilr", [](auto& s) { s.colo_resources[0].ilr_pv = 0.0; }},
        {"self loop line", [](auto& s) { s.lines.push_back({"Z1", "Z1", 1, 1, 1, 1}); }},
        {"rps above one", [](auto& s) { s.rps_share = 1.5; }},
        {"duplicate zone", [](auto& s) { s.zones.push_back(s.zones[0]); }},
    };
    for (const auto& [name, mutate] : cases)
    {
        CAPTURE(name);
        auto sys = base;
        mutate(sys);
        CHECK_FALSE(validate(sys).empty());
    }
}

TEST_CASE("write then load is the identity")
{
    for (const char* name : {"one_zone", "three_sites"})
    {
        CAPTURE(name);
        auto sys = load_system(testing::fixture(name));
        sys.forced_battery_mw = 12.5;
        sys.rps_share = 0.3;
        sys.lines.clear();
        const auto dir = testing::scratch_dir(std::string("roundtrip_") + name);
        write_system(sys, dir);
        const auto back = load_system(dir);
        CHECK(back == sys);
    }
}

TEST_CASE("two-zone round trip keeps lines and awkward numbers")
{
    auto sys = load_system(testing::fixture("one_zone"));
    sys.zones.push_back({"Z2", {1.0 / 3.0, 0.1, 1e-9, 12345.678901234}});
    sys.lines.push_back({"Z1", "Z2", 100, kInfinity, 12.3, 250});
    sys.colo_resources[0].param(ComponentKind::Grid).max_capacity = 0.7;
    sys.colo_resources[0].symmetric_dc = false;
    sys.colo_resources[0].components.insert(ComponentKind::ChargeAc);
    sys.colo_resources[0].components.insert(ComponentKind::DischargeAc);
    REQUIRE(validate(sys).empty());
    const auto dir = testing::scratch_dir("roundtrip_two_zone");
    write_system(sys, dir);
    CHECK(load_system(dir) == sys);
}
