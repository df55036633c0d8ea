#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flexblock/error.hpp"

namespace flexblock {

/// Per-step exogenous series driving one run. Availabilities are powers (MW);
/// hydrogen demand and gas supply are energies per step (MWh).
struct Profiles {
    double step_minutes = 5.0;
    std::vector<double> wind_mw;
    std::vector<double> pv_mw;
    std::vector<double> eload_mw;
    std::vector<double> h2_demand_mwh;
    std::vector<double> gas_supply_mwh;

    std::size_t size() const { return wind_mw.size(); }
    double dt_h() const { return step_minutes / 60.0; }

    /// wind + pv availability at step t.
    double renewable_mw(std::size_t t) const { return wind_mw[t] + pv_mw[t]; }
};

/// Shape parameters for synthesized profiles. The generator is fully
/// deterministic for a given seed (fixed splitmix64 recurrence).
struct SynthSpec {
    int steps = 576;  // 48 hours at 5-minute steps
    double step_minutes = 5.0;
    std::uint64_t seed = 1;
    double wind_peak_mw = 60.0;
    double pv_peak_mw = 60.0;
    double eload_base_mw = 25.0;
    double eload_peak_mw = 55.0;
    double h2_demand_mean_mwh = 1.0;
    double h2_demand_swing = 0.5;       // relative slow-cycle amplitude
    double gas_supply_mwh_per_step = 1.0;
};

/// Read a profiles CSV (header: minute,wind_mw,pv_mw,eload_mw,h2_mwh,gas_mwh).
/// Throws FlexError(Err::ParseError) with row/column context on malformed
/// input and FlexError(Err::ValidationError) on rule violations (negative
/// availability, non-uniform time column, empty file).
Profiles load_profiles(const std::string& path);

/// Write the exact CSV schema accepted by load_profiles. Values are printed
/// with 17 significant digits so a round-trip reproduces every double.
void save_profiles(const std::string& path, const Profiles& profiles);

/// Deterministic synthetic profiles: diurnal PV with a midday peak and zero
/// output at night, autocorrelated wind with calm-night episodes, double-peak
/// electric load and slowly varying hydrogen demand.
Profiles synthesize_profiles(const SynthSpec& spec);

/// Scale wind and PV availability by (1 + ratio); other series untouched.
/// Throws FlexError(Err::ValidationError) for negative ratios.
Profiles scale_penetration(const Profiles& profiles, double ratio);

/// Structural checks shared by the loaders: equal lengths, positive step,
/// non-negative series. Returns human-readable rule violations.
std::vector<std::string> validate_profiles(const Profiles& profiles);

}  // namespace flexblock
