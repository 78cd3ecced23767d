#pragma once

#include "seventerm/fixtures.hpp"
#include "seventerm/module.hpp"

#include <string>
#include <vector>

namespace seventerm {

// What to verify and where to put the results. degree_max 3 runs
// everything; 2 drops the page comparison and the oracle-backed exactness
// junction at the sixth term, marking both skipped.
struct ProblemOptions {
    int degree_max = 3;          // 2 or 3
    std::string checks = "all";  // "all", "exactness" or "coincidence"
    std::string report_path;     // empty: no report file

    bool operator==(const ProblemOptions&) const = default;
};

// A validated input: either a named built-in fixture or an explicit
// group / normal subgroup / module triple, plus options. Parsing resolves
// fixture names immediately, so consumers see one shape.
struct ProblemSpec {
    std::string fixture;         // nonempty when the input named a built-in
    std::string name;            // fixture name, or "custom"
    std::string summary;
    FiniteGroup g;
    std::vector<int> n_elems;
    GModule mod;
    ProblemOptions options;
};

bool operator==(const ProblemSpec& a, const ProblemSpec& b);

// Parses and validates one problem. Throws ValidationError; the message
// starts with the path of the first offending field and names a witness
// (the associativity triple, the non-normal conjugation, the module
// element whose matrix is not invertible, ...).
ProblemSpec parse_problem_text(const std::string& text);
ProblemSpec parse_problem(const std::string& path);

ProblemSpec problem_for_fixture(const Fixture& f);

// Canonical serialization. parse_problem_text(emit_problem(s)) == s, and
// the output is byte-stable for equal specs.
std::string emit_problem(const ProblemSpec& spec);

} // namespace seventerm
