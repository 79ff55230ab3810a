// Scenario-driven command line front end.  Runs one scenario file or a
// directory of them, printing JSON (default) or text reports to stdout.
// Exit codes: 0 success, 1 expectation mismatch, 2 input error.

#include "mukai/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic certificates for rank-two moduli on degree-8 K3 surfaces"};
    std::string scenario_file, all_dir;
    std::string format = "json";
    std::string branch = "positive";
    long height = 30;
    app.add_option("--scenario", scenario_file, "run a single scenario file");
    app.add_option("--all", all_dir, "run every *.json scenario in a directory");
    app.add_option("--height", height, "search bound for class enumerations")->default_val(30);
    app.add_option("--format", format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--branch", branch, "constraint branch for the transform solver")
        ->check(CLI::IsMember({"positive", "negative", "second"}));

    CLI11_PARSE(app, argc, argv);

    if (scenario_file.empty() == all_dir.empty()) {
        std::cerr << "exactly one of --scenario or --all is required\n";
        return 2;
    }

    mukai::ScenarioOptions opt;
    opt.height = height;
    if (branch == "negative") opt.branch = mukai::FMBranch::negative;
    else if (branch == "second") opt.branch = mukai::FMBranch::second;

    try {
        if (!scenario_file.empty()) {
            mukai::Scenario s = mukai::load_scenario_file(scenario_file);
            mukai::json report = mukai::run_scenario(s, opt);
            if (format == "text") std::cout << mukai::render_text(report);
            else std::cout << report.dump(2) << "\n";
            auto mismatches = mukai::expectation_mismatches(report, s.expected);
            for (const auto& m : mismatches) std::cerr << "mismatch " << m << "\n";
            return mismatches.empty() ? 0 : 1;
        }
        auto summary = mukai::run_all(all_dir, opt);
        std::cout << summary.table();
        return summary.exit_code;
    } catch (const mukai::ScenarioError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
