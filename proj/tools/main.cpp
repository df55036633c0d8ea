#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flexblock/cli.hpp"

namespace {

// Exit codes: 0 success, 1 validation failure, 2 usage/config error,
// 3 solver exhaustion.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

int classify(const flexblock::FlexError& e) {
    return e.code() == flexblock::Err::SolverFailure ? kExitSolver : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flexblock: electric-hydrogen energy block dispatch and flexibility margins"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool no_plots = false;
    std::string forecast;

    CLI::App* run = app.add_subcommand("run", "dispatch one scenario and emit its artifacts");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--out", out_dir, "output directory")->capture_default_str();
    run->add_option("--seed", seed, "override the profile synthesis seed");
    run->add_flag("--no-plots", no_plots, "skip SVG plot emission");
    run->add_option("--forecast", forecast, "forecast mode: perfect|persistence")
        ->check(CLI::IsMember({"perfect", "persistence"}));

    std::string ratios_arg;
    int jobs = 1;
    CLI::App* sweep = app.add_subcommand("sweep", "run a penetration-ratio sweep");
    sweep->add_option("scenario", scenario_path, "scenario JSON file")->required();
    sweep->add_option("--ratios", ratios_arg, "comma-separated ratios, e.g. 0,0.1,0.2")
        ->required();
    sweep->add_option("--out", out_dir, "output directory")->capture_default_str();
    sweep->add_option("--jobs", jobs, "concurrent runs")->capture_default_str();
    sweep->add_flag("--no-plots", no_plots, "skip SVG plot emission");
    sweep->add_option("--seed", seed, "override the profile synthesis seed");

    CLI::App* check = app.add_subcommand("check", "validate a scenario file and its profiles");
    check->add_option("scenario", scenario_path, "scenario JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    flexblock::RunOptions opts;
    opts.seed = seed;
    opts.plots = !no_plots;
    if (forecast == "perfect") opts.forecast = flexblock::ForecastMode::Perfect;
    if (forecast == "persistence") opts.forecast = flexblock::ForecastMode::Persistence;

    try {
        if (run->parsed()) {
            flexblock::cmd_run(scenario_path, out_dir, opts);
            return kExitOk;
        }
        if (sweep->parsed()) {
            std::vector<double> ratios;
            std::stringstream ss(ratios_arg);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (tok.empty()) continue;
                std::size_t pos = 0;
                double r = std::stod(tok, &pos);
                if (pos != tok.size())
                    throw flexblock::FlexError(flexblock::Err::ValidationError,
                                               "bad ratio '" + tok + "'");
                ratios.push_back(r);
            }
            auto entries =
                flexblock::cmd_sweep(flexblock::load_scenario(scenario_path), ratios, out_dir,
                                     jobs, opts);
            for (const auto& e : entries)
                if (!e.ok) return kExitSolver;
            return kExitOk;
        }
        if (check->parsed()) {
            flexblock::CheckReport report = flexblock::cmd_check(scenario_path);
            return report.all_pass() ? kExitOk : kExitValidation;
        }
    } catch (const flexblock::FlexError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return classify(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
