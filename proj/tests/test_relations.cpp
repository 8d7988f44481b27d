#include <doctest.h>

#include "acct/relations.hpp"
#include "helpers.hpp"

using namespace acctlib;
using testutil::load_scenario;

TEST_CASE("informed on the uber scenarios") {
    auto m = load_scenario("uber-hall.acct");
    CHECK(informed(m, "CHASSIS") == std::vector<std::string>{"DRIVER", "UBER"});
    CHECK(informed(m, "AI") == std::vector<std::string>{"UBER"});
    CHECK(informed(m, "LIDAR").empty());
    CHECK_THROWS_AS(informed(m, "NO_SUCH"), QueryError);
}

TEST_CASE("informed is empty without observations") {
    Declarations d;
    d.components = {"C1"};
    auto m = testutil::must_build(d);
    CHECK(informed(m, "C1").empty());
}

TEST_CASE("constructed reflects the component configuration") {
    auto m = load_scenario("uber-hall.acct");
    CHECK(constructed(m, "CHASSIS") == std::vector<std::string>{"VOLVO"});
    CHECK(constructed(m, "AI") == std::vector<std::string>{"DRIVER"});
    CHECK(constructed(m, "MANUAL_CTRL").empty());
}

TEST_CASE("responsible on the lindberg scenario") {
    auto m = load_scenario("uber-lindberg.acct");
    CHECK(responsible(m, "AI") == std::vector<std::string>{"UBER"});
    CHECK(responsible(m, "CHASSIS") == std::vector<std::string>{"DRIVER"});
}

TEST_CASE("responsible is empty without correction actions") {
    auto m = load_scenario("uber-hall.acct");
    for (const auto& c : m.components()) CHECK(responsible(m, c).empty());
}

TEST_CASE("missed_by_ego on the raci scenario") {
    auto m = load_scenario("uber-raci.acct");
    CHECK(missed_by_ego(m) == std::vector<std::string>{"DETECT_PEDESTRIAN"});
}

TEST_CASE("missed_by_ego covers all events when the ego logs nothing") {
    Declarations d;
    d.components = {"C1"};
    d.principals = {{"P1", PrincipalKind::Person}};
    d.events = {{"E1", EventKind::System}, {"E2", EventKind::Environment}};
    Declarations::Cps cps;
    cps.id = "S";
    d.cps = {cps};
    d.ego = "S";
    auto m = testutil::must_build(d);
    CHECK(missed_by_ego(m) == std::vector<std::string>{"E1", "E2"});
}

TEST_CASE("missed_by_ego requires an ego cps") {
    auto m = testutil::must_build(Declarations{});
    CHECK_THROWS_AS(missed_by_ego(m), QueryError);
}

TEST_CASE("missed_by_ego is empty when the ego logs every event") {
    Declarations d;
    d.components = {"C1"};
    d.principals = {{"P1", PrincipalKind::Person}};
    d.events = {{"E1", EventKind::System}};
    d.accounts = {"A1"};
    Declarations::Cps cps;
    cps.id = "S";
    cps.components = {"C1"};
    cps.principals = {"P1"};
    cps.setups = {{"C1", "P1"}};
    cps.logs = {{"E1", "C1", "A1"}};
    d.cps = {cps};
    d.ego = "S";
    auto m = testutil::must_build(d);
    CHECK(missed_by_ego(m).empty());
}
