#include "doctest.h"

#include "seventerm/errors.hpp"
#include "seventerm/problem.hpp"
#include "seventerm/report.hpp"

#include <json.hpp>

#include <string>

using namespace seventerm;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_problem_text(text);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

bool mentions(const std::string& msg, const std::string& needle) { return msg.find(needle) != std::string::npos; }

} // namespace

TEST_CASE("every built-in fixture round-trips through emit and parse") {
    for (const auto& f : builtin_fixtures()) {
        INFO("fixture " << f.name);
        const ProblemSpec spec = problem_for_fixture(f);
        const std::string text = emit_problem(spec);
        CHECK(parse_problem_text(text) == spec);
        CHECK(emit_problem(parse_problem_text(text)) == text);
    }
}

TEST_CASE("an explicit problem round-trips, twisted action included") {
    // Z/2 acting on Z/3 by negation.
    const std::string text = R"({
        "group": {"order": 2, "table": [[0, 1], [1, 0]]},
        "normal_subgroup": [0],
        "module": {"invariant_factors": [3], "action": [[[1]], [[2]]]},
        "options": {"degree_max": 3, "checks": "exactness"}
    })";
    const ProblemSpec spec = parse_problem_text(text);
    CHECK(spec.fixture.empty());
    CHECK(spec.name == "custom");
    CHECK(spec.g.order() == 2);
    CHECK_FALSE(spec.mod.is_trivial_action());
    CHECK(spec.options.checks == "exactness");
    CHECK(parse_problem_text(emit_problem(spec)) == spec);
}

TEST_CASE("parse diagnostics name the first offending field and a witness") {
    CHECK(mentions(error_of(R"({)"), "problem:"));
    CHECK(mentions(error_of(R"([1, 2])"), "top-level object"));
    CHECK(mentions(error_of(R"({"fixture": "nope"})"), "unknown fixture \"nope\""));
    CHECK(mentions(error_of(R"({"fixture": "fix-a", "group": {}})"), "named fixture already provides"));
    CHECK(mentions(error_of(R"({"fixture": "fix-a", "frob": 1})"), "frob: unknown field"));
    CHECK(mentions(error_of(R"({"group": {"order": 2, "table": [[0, 1], [1, 0]]}})"), "normal_subgroup: missing"));

    // Corrupted Z/3 table: associativity breaks at a named triple.
    const std::string bad_table = R"({
        "group": {"order": 3, "table": [[0, 1, 2], [1, 0, 0], [2, 0, 1]]},
        "normal_subgroup": [0],
        "module": {"invariant_factors": [2]}
    })";
    const std::string msg = error_of(bad_table);
    CHECK(mentions(msg, "group.table"));
    CHECK(mentions(msg, "associativity fails at"));

    // {0, a transposition} is a subgroup of S3 but not normal.
    const std::string not_normal = R"({
        "group": {"order": 6, "table": [
            [0, 1, 2, 3, 4, 5], [1, 0, 4, 5, 2, 3], [2, 3, 0, 1, 5, 4],
            [3, 2, 5, 4, 0, 1], [4, 5, 1, 0, 3, 2], [5, 4, 3, 2, 1, 0]]},
        "normal_subgroup": [0, 1],
        "module": {"invariant_factors": [2]}
    })";
    CHECK(mentions(error_of(not_normal), "normal_subgroup: not normal"));

    // Doubling is well defined on Z/4 but not invertible.
    const std::string not_invertible = R"({
        "group": {"order": 2, "table": [[0, 1], [1, 0]]},
        "normal_subgroup": [0],
        "module": {"invariant_factors": [4], "action": [[[1]], [[2]]]}
    })";
    CHECK(mentions(error_of(not_invertible), "module.action[1]: not invertible"));

    CHECK(mentions(error_of(R"({"group": {"order": 2, "table": [[0, 1], [1, 0]]},
                              "normal_subgroup": [0],
                              "module": {"invariant_factors": [1]}})"),
                   "module.invariant_factors[0]"));
    CHECK(mentions(error_of(R"({"fixture": "fix-a", "options": {"checks": "everything"}})"),
                   "options.checks"));
    CHECK(mentions(error_of(R"({"fixture": "fix-a", "options": {"degree_max": 4}})"), "options.degree_max"));
}

TEST_CASE("a full run on a built-in fixture reports byte-stable and all-pass") {
    ProblemSpec spec = problem_for_fixture(fixture_by_name("fix-a").value());
    const RunResult first = run_problem(spec);
    CHECK(first.all_pass);
    CHECK(first.sign != 0);
    CHECK(first.pages.size() == 4);
    CHECK_FALSE(first.construction.empty());
    CHECK(first.junctions.size() == 6); // five from the maps, one from the pages
    CHECK_FALSE(first.coincidence.empty());
    CHECK_FALSE(first.spectral.empty());

    const RunResult second = run_problem(spec);
    CHECK(first.report_json == second.report_json);

    const auto j = nlohmann::ordered_json::parse(first.report_json);
    CHECK(j["name"] == "fix-a");
    CHECK(j["all_pass"] == true);
    CHECK(j["terms"].size() == 7);
    CHECK(j["maps"].size() == 5);
    CHECK(j["orders"]["G"] == "4");
    CHECK(j["terms"][3]["invariant_factors"][0] == "2");
    CHECK(j["input"]["fixture"] == "fix-a");
    CHECK(j["spectral"]["pages"].size() == 4);
}

TEST_CASE("checks and degree cap select which sections carry work") {
    ProblemSpec spec = problem_for_fixture(fixture_by_name("fix-b").value());

    spec.options.checks = "exactness";
    const RunResult exact = run_problem(spec);
    CHECK(exact.all_pass);
    CHECK(exact.coincidence.empty());
    CHECK(exact.junctions.size() == 7); // five from the maps, evidence + junction from the pages
    for (const auto& v : exact.junctions) CHECK(v.ok());

    spec.options.checks = "coincidence";
    const RunResult coin = run_problem(spec);
    CHECK(coin.all_pass);
    CHECK_FALSE(coin.coincidence.empty());
    CHECK_FALSE(coin.spectral.empty());

    spec.options.checks = "all";
    spec.options.degree_max = 2;
    const RunResult capped = run_problem(spec);
    CHECK(capped.all_pass);
    CHECK(capped.pages.empty());
    CHECK(capped.sign == 0);
    bool skipped_junction = false;
    for (const auto& v : capped.junctions)
        if (v.status == Verdict::Status::skipped) skipped_junction = true;
    CHECK(skipped_junction);
    CHECK_FALSE(capped.coincidence.empty()); // degree-2 statement, still runs
}

TEST_CASE("the degenerate problem with N equal to G runs with trivial quotient terms") {
    const std::string text = R"({
        "group": {"order": 3, "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]},
        "normal_subgroup": [0, 1, 2],
        "module": {"invariant_factors": [3]}
    })";
    const ProblemSpec spec = parse_problem_text(text);
    const RunResult r = run_problem(spec);
    CHECK(r.all_pass);
    REQUIRE(r.sequence.terms.size() == 7);
    CHECK(r.sequence.terms[0].order() == 1); // H^1(Q, M^N)
    CHECK(r.sequence.terms[1].order() == 3); // H^1(G, M) = Hom(Z/3, Z/3)
    CHECK(r.sequence.terms[2].order() == 3); // H^1(N, M)^Q, Q trivial
    CHECK(r.sequence.terms[3].order() == 1);
    CHECK(r.sequence.terms[4].order() == 1);
    CHECK(r.sequence.terms[5].order() == 1);
    CHECK(r.sequence.terms[6].order() == 1);
}
