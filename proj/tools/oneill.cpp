#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "oneill/scenario.hpp"

using namespace oneill;

namespace {

int run_command(const std::string& path, int samples, long long seed, const std::string& mode,
                const std::string& report_path, double tol_first, double tol_second) {
    json input;
    try {
        std::ifstream in(path);
        if (!in) {
            std::cerr << "cannot open scenario file: " << path << "\n";
            return 2;
        }
        input = json::parse(in);
    } catch (const json::parse_error& e) {
        std::cerr << "scenario JSON parse error: " << e.what() << "\n";
        return 2;
    }
    try {
        Scenario sc = scenario_from_json(input);
        if (samples > 0) sc.samples = samples;
        if (seed >= 0) sc.seed = static_cast<uint64_t>(seed);
        if (!mode.empty()) {
            if (mode != "exact" && mode != "float") {
                std::cerr << "mode must be exact or float\n";
                return 2;
            }
            sc.exact_mode = mode == "exact";
        }
        if (tol_first > 0) sc.tol_first = tol_first;
        if (tol_second > 0) sc.tol_second = tol_second;
        RunResult res = run_scenario(sc);
        std::string text = res.report.dump(2) + "\n";
        if (report_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(report_path);
            if (!out) {
                std::cerr << "cannot write report to " << report_path << "\n";
                return 2;
            }
            out << text;
            // one human line per check on stdout when the report goes to a file
            for (const auto& c : res.report.at("checks"))
                std::cout << c.at("verdict").get<std::string>() << "  "
                          << c.at("name").get<std::string>() << "  (max residual "
                          << c.at("residuals").at("max").get<std::string>() << ")\n";
        }
        return res.exit_code;
    } catch (const parse_error& e) {
        std::cerr << "expression error: " << e.what() << "\n";
        return 2;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification toolkit for Riemannian submersions from standard "
                 "contact metric structures"};
    app.require_subcommand(1);

    std::string scenario_path, report_path, mode;
    int samples = 0;
    long long seed = -1;
    double tol_first = 0, tol_second = 0;
    auto* run = app.add_subcommand("run", "run the checks of a scenario file");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--samples", samples, "sample points per check");
    run->add_option("--seed", seed, "random seed");
    run->add_option("--mode", mode, "exact or float");
    run->add_option("--report", report_path, "write the JSON report to this path");
    run->add_option("--tol-first", tol_first, "float tolerance, first-derivative level");
    run->add_option("--tol-second", tol_second, "float tolerance, curvature level");

    auto* fixtures = app.add_subcommand("fixtures", "list or emit built-in configurations");
    std::string emit_name, out_path;
    auto* list = fixtures->add_subcommand("list", "list fixture names");
    auto* emit = fixtures->add_subcommand("emit", "write a fixture as a scenario file");
    emit->add_option("name", emit_name, "fixture name")->required();
    emit->add_option("--out", out_path, "output path (default stdout)");
    fixtures->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    if (*run)
        return run_command(scenario_path, samples, seed, mode, report_path, tol_first,
                           tol_second);
    if (*list) {
        for (const auto& d : fixture_catalog())
            std::cout << d.name << "  -  " << d.description << "\n";
        return 0;
    }
    if (*emit) {
        try {
            Scenario sc = scenario_from_fixture(fixture(emit_name));
            std::string text = scenario_to_json(sc).dump(2) + "\n";
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(out_path);
                if (!out) {
                    std::cerr << "cannot write " << out_path << "\n";
                    return 2;
                }
                out << text;
            }
            return 0;
        } catch (const input_error& e) {
            std::cerr << e.what() << "\n";
            return 2;
        }
    }
    return 2;
}
