#include "seventerm/errors.hpp"
#include "seventerm/report.hpp"
#include "seventerm/spectral.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

using namespace seventerm;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

// A named built-in fixture or a path to a problem file.
ProblemSpec resolve_input(const std::string& input) {
    if (auto f = fixture_by_name(input)) return problem_for_fixture(*f);
    return parse_problem(input);
}

int cmd_run(const std::string& input, const std::string& checks, const std::string& report_path,
            int degree_max, bool checks_set, bool report_set, bool degree_set) {
    ProblemSpec spec = resolve_input(input);
    if (checks_set) spec.options.checks = checks;
    if (report_set) spec.options.report_path = report_path;
    if (degree_set) spec.options.degree_max = degree_max;

    const auto start = std::chrono::steady_clock::now();
    const RunResult r = run_problem(spec);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!spec.options.report_path.empty()) {
        std::ofstream out(spec.options.report_path, std::ios::binary);
        if (!out) throw ValidationError("options.report: cannot write \"" + spec.options.report_path + "\"");
        out << r.report_json;
    }
    write_text_summary(std::cout, spec, r, seconds);
    return r.all_pass ? kExitPass : kExitFail;
}

int cmd_list_fixtures() {
    for (const auto& f : builtin_fixtures()) std::cout << f.name << ": " << f.summary << "\n";
    return kExitPass;
}

int cmd_oracle(const std::string& input, int p, int q) {
    const ProblemSpec spec = resolve_input(input);
    const GroupExtension ext = make_extension(spec.g, spec.n_elems);
    const Pipeline pl = build_pipeline(ext, spec.mod);
    SpectralOracle so(pl);

    bool ok = true;
    const SpectralPage& pg = so.page(p, q);
    std::cout << "E2(" << p << ", " << q << "): ";
    const FgAbGroup& g = pg.sub.group;
    if (g.order() == 1) {
        std::cout << "trivial\n";
    } else {
        std::string s;
        for (const auto& d : g.torsion) s += (s.empty() ? "Z/" : " x Z/") + d.str();
        std::cout << s << " (order " << g.order().str() << ")\n";
    }
    if (q >= 1 && p + q <= 2) {
        BuiltMap d = so.d2(p, q);
        std::cout << "d2 into E2(" << p + 2 << ", " << q - 1 << "): kernel order "
                  << hom_kernel(d.hom).group.order().str() << ", image order "
                  << hom_image(d.hom).group.order().str() << "\n";
        for (const auto& v : d.checks) {
            std::cout << "  " << v.status_str() << " " << v.name;
            if (!v.detail.empty()) std::cout << " (" << v.detail << ")";
            std::cout << "\n";
            ok = ok && v.ok();
        }
    }
    return ok ? kExitPass : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"seven-term exact sequence and spectral comparison toolkit"};
    app.require_subcommand(1);

    std::string run_input, run_checks = "all", run_report;
    int run_degree = 3;
    auto* run = app.add_subcommand("run", "verify one problem and write a report");
    run->add_option("--input", run_input, "problem file or built-in fixture name")->required();
    auto* opt_checks = run->add_option("--checks", run_checks, "all, exactness or coincidence");
    auto* opt_report = run->add_option("--report", run_report, "path for the machine-readable report");
    auto* opt_degree = run->add_option("--degree-max", run_degree, "highest verified degree (2 or 3)");

    auto* list = app.add_subcommand("list-fixtures", "print the built-in fixtures");

    std::string oracle_input;
    int oracle_p = 0, oracle_q = 0;
    auto* oracle = app.add_subcommand("oracle", "print one spectral page and its differential");
    oracle->add_option("--input", oracle_input, "problem file or built-in fixture name")->required();
    oracle->add_option("--p", oracle_p, "page column")->required();
    oracle->add_option("--q", oracle_q, "page row")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitInput;
    }

    try {
        if (run->parsed())
            return cmd_run(run_input, run_checks, run_report, run_degree, opt_checks->count() > 0,
                           opt_report->count() > 0, opt_degree->count() > 0);
        if (list->parsed()) return cmd_list_fixtures();
        if (oracle->parsed()) return cmd_oracle(oracle_input, oracle_p, oracle_q);
    } catch (const ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const PreconditionError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitInput;
}
