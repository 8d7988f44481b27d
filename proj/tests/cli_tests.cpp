// End-to-end tests that drive the real binary through a shell. The binary
// path is handed in as argv[1] by CTest.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

using json = nlohmann::ordered_json;

namespace {

std::string g_binary;

std::string scenario(const std::string& name) {
    return std::string(ACCT_SCENARIO_DIR) + "/" + name;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    // stderr is folded into stdout so diagnostics can be asserted on too.
    std::string cmd = g_binary + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("validate: lenient clean scenario exits 0") {
    auto r = run("validate " + scenario("uber-hall.acct"));
    CHECK(r.exit_code == 0);
}

TEST_CASE("validate: strict mode reports CPS-1 and exits 1") {
    auto r = run("validate --strict " + scenario("uber-hall.acct"));
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("CPS-1") != std::string::npos);
}

TEST_CASE("validate: json format is parseable and carries severities") {
    auto r = run("validate --strict --format json " + scenario("uber-hall.acct"));
    CHECK(r.exit_code == 1);
    auto arr = json::parse(r.out);
    REQUIRE(arr.is_array());
    bool saw_error = false;
    for (const auto& v : arr) {
        CHECK(v.contains("rule"));
        if (v["severity"] == "error") saw_error = true;
    }
    CHECK(saw_error);
}

TEST_CASE("validate: missing file exits 2") {
    auto r = run("validate /nonexistent/path.acct");
    CHECK(r.exit_code == 2);
}

TEST_CASE("validate: malformed scenario exits 2 with line/column diagnostics") {
    std::string path = "/tmp/acct_cli_bad.acct";
    std::ofstream(path) << "scenario \"x\"\ncomponent\n";
    auto r = run("validate " + path);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("2:") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("query: hall on the bundled scenario") {
    auto r = run("query --notion hall " + scenario("uber-hall.acct"));
    CHECK(r.exit_code == 0);
    CHECK(r.out == "[\"AI\",\"CHASSIS\"]\n");
}

TEST_CASE("query: lindberg requires --component") {
    auto r = run("query --notion lindberg " + scenario("uber-lindberg.acct"));
    CHECK(r.exit_code == 64);
}

TEST_CASE("query: hall rejects a selector flag") {
    auto r = run("query --notion hall --event HIT_PEDESTRIAN " + scenario("uber-hall.acct"));
    CHECK(r.exit_code == 64);
}

TEST_CASE("query: raci with unknown event exits 2") {
    auto r = run("query --notion raci --event NO_SUCH " + scenario("uber-raci.acct"));
    CHECK(r.exit_code == 2);
}

TEST_CASE("query: raci without any causal information exits 3") {
    auto r = run("query --notion raci --event HIT_PEDESTRIAN " + scenario("uber-hall.acct"));
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("no causal information") != std::string::npos);
}

TEST_CASE("query: json output carries notion, subject and result") {
    auto r = run("query --notion lindberg --component CHASSIS --format json " +
                 scenario("uber-lindberg.acct"));
    CHECK(r.exit_code == 0);
    auto out = json::parse(r.out);
    CHECK(out["notion"] == "lindberg");
    CHECK(out["subject"] == "CHASSIS");
    CHECK(out["result"] == json::array({"DRIVER"}));
}

TEST_CASE("causes: structural model computes the but-for cause") {
    auto r = run("causes --event HIT_PEDESTRIAN --minimal " + scenario("lidar-structural.acct"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("computed: [\"LIDAR\"]") != std::string::npos);
    CHECK(r.out.find("minimal: [[\"LIDAR\"]]") != std::string::npos);
}

TEST_CASE("causes: explicit causes answer without a structural model") {
    auto r = run("causes --event HIT_PEDESTRIAN --format json " + scenario("uber-raci.acct"));
    CHECK(r.exit_code == 0);
    auto out = json::parse(r.out);
    CHECK(out["explicit"] == json::array({"AI", "CHASSIS"}));
    CHECK(out["computed"].is_null());
}

TEST_CASE("causes: no information at all exits 3") {
    auto r = run("causes --event HIT_PEDESTRIAN " + scenario("uber-hall.acct"));
    CHECK(r.exit_code == 3);
}

TEST_CASE("report: repeated runs are byte-identical") {
    auto a = run("report --strict --format json " + scenario("uber-raci.acct"));
    auto b = run("report --strict --format json " + scenario("uber-raci.acct"));
    CHECK(a.out == b.out);
    CHECK(a.exit_code == b.exit_code);
}

TEST_CASE("report: json exposes missed_by_ego") {
    auto r = run("report --format json " + scenario("uber-raci.acct"));
    auto out = json::parse(r.out);
    CHECK(out["missed_by_ego"] == json::array({"DETECT_PEDESTRIAN"}));
}

TEST_CASE("compare: all three notions appear") {
    auto r = run("compare " + scenario("uber-raci.acct"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("hall_accountable") != std::string::npos);
    CHECK(r.out.find("lindberg_accountable") != std::string::npos);
    CHECK(r.out.find("raci_accountable") != std::string::npos);
}

TEST_CASE("usage: unknown subcommand exits 64") {
    auto r = run("frobnicate");
    CHECK(r.exit_code == 64);
}

TEST_CASE("usage: bad --format value exits 64") {
    auto r = run("validate --format yaml " + scenario("uber-hall.acct"));
    CHECK(r.exit_code == 64);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_tests <path-to-acct-binary>\n");
        return 2;
    }
    g_binary = argv[1];
    doctest::Context ctx;
    ctx.applyCommandLine(1, argv);
    return ctx.run();
}
