#pragma once

#include "seventerm/problem.hpp"
#include "seventerm/seven_term.hpp"
#include "seventerm/spectral.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace seventerm {

// One full verification run. all_pass aggregates every verdict in the four
// sections; skipped verdicts never fail a run. Which sections carry real
// work follows options.checks and options.degree_max:
//   exactness    construction + junctions (the sixth-term junction builds
//                the pages it needs and records that evidence)
//   coincidence  construction + the three transgression routes against
//                each other + the full page comparison suite
//   all          everything
struct RunResult {
    SevenTermData sequence;
    std::vector<Verdict> construction;
    std::vector<Verdict> junctions;
    std::vector<Verdict> coincidence;
    std::vector<Verdict> spectral;
    int sign = 0; // transgression convention unit; 0 = not measured
    std::vector<std::pair<std::string, FgAbGroup>> pages;
    std::string report_json; // canonical, byte-stable for equal specs
    bool all_pass = false;
};

RunResult run_problem(const ProblemSpec& spec);

// Human-readable summary. Elapsed time belongs here and never in
// report_json.
void write_text_summary(std::ostream& os, const ProblemSpec& spec, const RunResult& r, double seconds);

} // namespace seventerm
