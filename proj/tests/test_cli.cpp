#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "umahler/cli.hpp"

using namespace umahler;

namespace {

struct CliRun {
    int status;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int status = run_cli(args, out, err);
    return CliRun{status, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("minf --rational 4") {
    CliRun r = run({"minf", "--rational", "4"});
    CHECK(r.status == 0);
    CHECK(contains(r.out, "exact   = 2"));
    CHECK(contains(r.out, "(2)^2"));
}

TEST_CASE("minf --quadratic 1 -5 1") {
    CliRun r = run({"minf", "--quadratic", "1", "-5", "1"});
    CHECK(r.status == 0);
    CHECK(contains(r.out, "exact   = (3+sqrt(21))/2"));
    CHECK(contains(r.out, "decimal = 3.791287847477920003294023597"));
}

TEST_CASE("b2list replicates the published block") {
    CliRun r = run({"b2list", "1", "-5", "1", "21"});
    CHECK(r.status == 0);
    CHECK(r.out ==
          "(1, 3, -3) -- 3.791287847477920003294023597\n"
          "(1, 5, 1) -- 4.791287847477920003294023597\n"
          "(3, 3, -1) -- 3.791287847477920003294023597\n");

    CliRun w = run({"--workers", "3", "b2list", "1", "-5", "1", "21"});
    CHECK(w.out == r.out);
    CliRun d = run({"--digits", "9", "b2list", "1", "-5", "1", "21"});
    CHECK(contains(d.out, "(1, 3, -3) -- 3.791287847\n"));
}

TEST_CASE("unit subcommand") {
    CliRun r = run({"unit", "21"});
    CHECK(r.status == 0);
    CHECK(r.out == "(5+sqrt(21))/2\n");
    CliRun r2 = run({"unit", "2"});
    CHECK(r2.out == "1+sqrt(2)\n");
    CHECK(run({"unit", "12"}).status == 1);
    CHECK(run({"unit", "-1"}).status == 1);
}

TEST_CASE("mahler and mbar subcommands") {
    CliRun r = run({"mahler", "(5+sqrt(21))/2"});
    CHECK(r.status == 0);
    CHECK(contains(r.out, "exact   = (5+sqrt(21))/2"));
    CliRun p = run({"mahler", "--poly", "1", "-5", "1"});
    CHECK(contains(p.out, "exact   = (5+sqrt(21))/2"));

    CliRun m = run({"mbar", "2*sqrt(-1)"});
    CHECK(m.status == 0);
    CHECK(contains(m.out, "exact   = 2"));
    CHECK(contains(m.out, "zeta    = -sqrt(-1)"));
    CHECK(contains(m.out, "reduced = 2"));
}

TEST_CASE("bset subcommand") {
    CliRun r = run({"bset", "(5+sqrt(21))/2"});
    CHECK(r.status == 0);
    CHECK(contains(r.out, "17 entries"));
    CliRun j = run({"--json", "bset", "4"});
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["entries"].size() == 11);
    CHECK(parsed["measure"]["exact"] == "4");
}

TEST_CASE("relations subcommand") {
    CliRun r = run({"relations", "4", "2"});
    CHECK(r.status == 0);
    CHECK(contains(r.out, "(4)^1 * (2)^-2 = root of unity"));
    CliRun indep = run({"relations", "2", "3"});
    CHECK(contains(indep.out, "no relations"));
}

TEST_CASE("json and human outputs agree on the exact value") {
    CliRun h = run({"minf", "--rational", "35/6"});
    CliRun j = run({"--json", "minf", "--rational", "35/6"});
    CHECK(h.status == 0);
    CHECK(j.status == 0);
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["value"]["exact"] == "7");
    CHECK(contains(h.out, "exact   = 7"));
    CHECK(parsed["witness"]["s"] == 1);
    CHECK(parsed["j_index"].is_number_integer());
    CHECK(parsed["bset_size"].get<long>() >= parsed["j_index"].get<long>());
}

TEST_CASE("json minf --quadratic carries the full schema") {
    CliRun j = run({"--json", "minf", "--quadratic", "1", "-5", "1"});
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["value"]["exact"] == "(3+sqrt(21))/2");
    CHECK(parsed["value"]["decimal"] == "3.791287847477920003294023597");
    CHECK(parsed["b_j"]["minpoly"] == nlohmann::json::array({1, 3, -3}));
    CHECK(parsed["bset_size"] == 17);
    CHECK(parsed["witness"]["zeta"]["value"] == "1");
    CHECK(parsed.contains("timings"));
}

TEST_CASE("exit codes") {
    CHECK(run({"minf", "--rational", "0"}).status == 1);          // domain
    CHECK(run({"minf", "--rational", "4", "--quadratic", "1", "-5", "1"}).status == 2);
    CHECK(run({"minf"}).status == 2);                             // usage
    CHECK(run({"nonsense"}).status == 2);
    CHECK(run({"mahler", "(5+sqrt(21)"}).status == 2);            // parse error with position
    CHECK(contains(run({"mahler", "(5+sqrt(21)"}).err, "position"));
    CHECK(run({"mahler", "--poly", "1", "0", "-1"}).status == 1); // reducible
    CHECK(run({"--guard", "50", "minf", "--rational", "1000"}).status == 3);
    CHECK(run({"b2list", "1", "0", "-1", "1"}).status == 1);
}

TEST_CASE("selftest passes") {
    CliRun r = run({"selftest"});
    CHECK(r.status == 0);
    CHECK_FALSE(contains(r.out, "FAIL"));
}
