#include <doctest.h>

#include "acct/scenario.hpp"
#include "helpers.hpp"

using namespace acctlib;

TEST_CASE("single component declaration") {
    auto r = parse_scenario("component LIDAR\n");
    REQUIRE(r.ast);
    REQUIRE(r.ast->statements.size() == 1);
    auto* node = std::get_if<ast::Component>(&r.ast->statements[0].node);
    REQUIRE(node);
    CHECK(node->id == "LIDAR");
}

TEST_CASE("bad principal kind produces a pointed diagnostic") {
    auto r = parse_scenario("principal UBER kind=robot\n");
    REQUIRE_FALSE(r.ast);
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].line == 1);
    CHECK(r.errors[0].expected == "person|legal_entity");
    CHECK(r.errors[0].found == "'robot'");
}

TEST_CASE("bundled uber-hall file parses cleanly with the expected statement count") {
    auto text = testutil::read_file(testutil::scenario_path("uber-hall.acct"));
    auto r = parse_scenario(text);
    REQUIRE(r.ast);
    // 23 single-line statements plus the two cps blocks
    CHECK(r.ast->statements.size() == 25);
    CHECK(r.ast->scenario_name == "uber-hall");
}

TEST_CASE("every malformed line is reported, resynchronizing per line") {
    auto r = parse_scenario("component A\nbogus line here\ncomponent B\nprincipal X\n");
    REQUIRE_FALSE(r.ast);
    CHECK(r.errors.size() == 2);
    CHECK(r.errors[0].line == 2);
    CHECK(r.errors[1].line == 4);
}

TEST_CASE("unterminated cps block") {
    auto r = parse_scenario("component A\ncps S {\n  components = [A]\n");
    REQUIRE_FALSE(r.ast);
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].expected == "'}'");
    CHECK(r.errors[0].found == "end of input");
}

TEST_CASE("CRLF input is accepted") {
    auto r = parse_scenario("component A\r\naccount B\r\n");
    REQUIRE(r.ast);
    CHECK(r.ast->statements.size() == 2);
}

TEST_CASE("invalid UTF-8 is rejected with a single error") {
    std::string text = "component A\ncomp\xC3onent B\n";
    auto r = parse_scenario(text);
    REQUIRE_FALSE(r.ast);
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].line == 2);
    CHECK(r.errors[0].expected == "valid UTF-8");
}

TEST_CASE("resolve flags a cps block without an ego statement") {
    auto r = parse_scenario("component A\nprincipal P kind=person\ncps S {\n}\n");
    REQUIRE(r.ast);
    auto resolved = resolve(*r.ast);
    auto* errs = std::get_if<std::vector<BuildError>>(&resolved);
    REQUIRE(errs);
    REQUIRE(errs->size() == 1);
    CHECK((*errs)[0].kind == BuildError::Kind::MissingEgo);
}

TEST_CASE("zero cps blocks resolve to a model with an empty sts") {
    auto r = parse_scenario("component A\n");
    REQUIRE(r.ast);
    auto resolved = resolve(*r.ast);
    auto* model = std::get_if<Model>(&resolved);
    REQUIRE(model);
    CHECK_FALSE(model->sts().has_ego());
}

TEST_CASE("ego cps of the bundled file has the expected component set") {
    auto m = testutil::load_scenario("uber-hall.acct");
    const auto& ego = m.cps().at(m.sts().ego);
    CHECK(ego.components == std::set<std::string>{"VIDEO", "LIDAR", "USONIC", "AI"});
}

TEST_CASE("serialization sorts declarations within each kind") {
    Declarations d;
    d.scenario_name = "s";
    d.components = {"Z_COMP", "A_COMP"};
    auto text = serialize(testutil::must_build(d));
    auto a = text.find("component A_COMP");
    auto z = text.find("component Z_COMP");
    REQUIRE(a != std::string::npos);
    REQUIRE(z != std::string::npos);
    CHECK(a < z);
}

TEST_CASE("empty model serializes to just the scenario header") {
    auto text = serialize(testutil::must_build(Declarations{}));
    CHECK(text == "scenario \"\"\n");
}

TEST_CASE("bundled files round-trip through serialize/parse/resolve") {
    for (const char* name :
         {"uber-hall.acct", "uber-lindberg.acct", "uber-raci.acct", "lidar-structural.acct"}) {
        auto m = testutil::load_scenario(name);
        auto r = parse_scenario(serialize(m));
        REQUIRE(r.ast);
        auto resolved = resolve(*r.ast);
        auto* back = std::get_if<Model>(&resolved);
        REQUIRE(back);
        CHECK(*back == m);
    }
}

TEST_CASE("duplicate scenario header is a parse error") {
    auto r = parse_scenario("scenario \"a\"\nscenario \"b\"\n");
    REQUIRE_FALSE(r.ast);
    CHECK(r.errors.size() == 1);
}
