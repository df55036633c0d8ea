#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flexblock/flexibility.hpp"
#include "flexblock/scenario.hpp"

namespace flexblock {

/// Largest per-step shortfall of one margin dimension and when it occurred.
struct ShortfallPeak {
    double value = 0.0;
    double t_min = 0.0;
};

/// Run-level result: indices, envelope summary, energy totals and the files
/// the run emitted (relative to its output directory).
struct RunReport {
    std::string scenario;
    FlexIndices indices;
    ShortfallPeak max_ramp_shortfall;    // MW/min
    ShortfallPeak max_power_shortfall;   // MW
    ShortfallPeak max_energy_shortfall;  // MWh
    double curtailed_mwh = 0.0;
    double shed_mwh = 0.0;
    double surplus_mwh = 0.0;
    double served_load_mwh = 0.0;
    double h2_unserved_mwh = 0.0;
    int flagged_steps = 0;
    std::vector<std::string> artifacts;
};

struct RunOptions {
    std::uint64_t seed = 0;  // 0 keeps the scenario's own seed
    bool plots = true;
    std::optional<ForecastMode> forecast;
    double extra_ratio = 0.0;  // additional penetration scaling (sweeps)
    bool quiet = false;        // suppress the stdout summary
};

/// Run one scenario end to end: dispatch, envelope, indices, artifacts
/// (trace.csv, trace.json, envelope.csv, indices.json and, unless disabled,
/// dispatch.svg + envelope.svg), plus a summary on stdout.
RunReport cmd_run(const ScenarioSpec& spec, const std::string& out_dir,
                  const RunOptions& opts = {});
RunReport cmd_run(const std::string& scenario_path, const std::string& out_dir,
                  const RunOptions& opts = {});

struct SweepEntry {
    double ratio = 0.0;
    bool ok = false;
    std::string error;
    RunReport report;
};

/// One run per penetration ratio (concurrent up to `jobs`), a combined
/// sweep.csv (ratio, E_IR, E_IO, E_IC, abandonment) and abandonment.svg.
/// Failed ratios are kept in the result with their diagnostic.
std::vector<SweepEntry> cmd_sweep(const ScenarioSpec& spec, const std::vector<double>& ratios,
                                  const std::string& out_dir, int jobs = 1,
                                  const RunOptions& opts = {});

struct CheckRule {
    std::string rule;
    bool pass = false;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckRule> rules;

    bool all_pass() const {
        for (const CheckRule& r : rules)
            if (!r.pass) return false;
        return true;
    }
};

/// Validate a scenario: unit invariants, profile schema and horizon
/// coverage, controller settings. Prints one pass/fail line per rule.
CheckReport cmd_check(const std::string& scenario_path, bool quiet = false);

/// Serialize a run report (written as indices.json by cmd_run).
std::string report_to_json(const RunReport& report);

}  // namespace flexblock
