#pragma once

#include <vector>

#include "flexblock/block.hpp"
#include "flexblock/mpc.hpp"

namespace flexblock {

/// Flexibility margin in the three dimensions, split by direction.
/// All entries are magnitudes (>= 0); direction is carried by the field name.
struct MarginPoint {
    double ramp_up_mw_per_min = 0.0;
    double ramp_down_mw_per_min = 0.0;
    double power_up_mw = 0.0;
    double power_down_mw = 0.0;
    double energy_up_mwh = 0.0;
    double energy_down_mwh = 0.0;
};

/// Outcome of the six balance inequalities (pass = provided >= required).
struct BalanceFlags {
    bool ramp_up = true;
    bool ramp_down = true;
    bool power_up = true;
    bool power_down = true;
    bool energy_up = true;
    bool energy_down = true;

    bool all() const {
        return ramp_up && ramp_down && power_up && power_down && energy_up && energy_down;
    }
};

struct EnvelopePoint {
    double t_min = 0.0;
    MarginPoint provided;
    MarginPoint required;
};

/// Per-step provided/required margin pairs over a dispatch trace.
struct Envelope {
    std::vector<EnvelopePoint> points;
    double dt_h = 0.0;

    std::size_t size() const { return points.size(); }
};

/// Flexibility insufficiency indices over one run.
struct FlexIndices {
    double e_ir_mw_per_min = 0.0;  // ramp insufficiency expectation
    double e_io_mw = 0.0;          // power insufficiency expectation
    double e_ic_mwh = 0.0;         // energy insufficiency expectation
    double rho = 0.0;              // fraction of steps with any shortfall
    int beta = 0;                  // number of steps with any shortfall
    double abandonment = 0.0;      // spilled / available renewable energy
    double utilization = 0.0;      // per-step average used/available ratio
};

/// Net load: renewable available power minus electric load at step t.
/// Negative values mean a deficit, i.e. an upward flexibility need.
double net_load(const std::vector<double>& eload_mw, const std::vector<double>& renewable_avail_mw,
                std::size_t t);

/// Element-wise net load series.
std::vector<double> net_load_series(const std::vector<double>& eload_mw,
                                    const std::vector<double>& renewable_avail_mw);

/// Headroom the block can offer from the given operating point.
///
/// Upward responders: battery discharge, fuel cell, gas unit. Downward:
/// battery charge, electrolyzer, renewable curtailment (up to the current
/// renewable output). Energy margins come from the storage SOC headroom:
/// dischargeable (soc - soc_min)*C*eta_gen, chargeable (soc_max - soc)*C/eta_load.
MarginPoint provided_margin(const EnergyBlock& block, const BlockState& states, double dt_h);

/// Margin the net-load trajectory demands at step t: |net| in power,
/// |net(t+1) - net(t)| / dt in ramp and the trapezoidal |integral of net|
/// in energy, each assigned a direction by sign.
/// Throws FlexError(Err::IndexOutOfRange) unless t and t+1 are defined.
MarginPoint required_margin(const std::vector<double>& net_load_mw, std::size_t t, double dt_h);

/// Eq-style balance criterion: pass per dimension iff provided >= required.
BalanceFlags balance_check(const MarginPoint& provided, const MarginPoint& required);

/// Provided/required pairs along a trace. The net-load series must cover the
/// trace; the sample after the last step is padded by holding the last value.
Envelope build_envelope(const EnergyBlock& block, const DispatchTrace& trace,
                        const std::vector<double>& net_load_mw);

/// Insufficiency indices over a run: per-dimension shortfall sums scaled by
/// the shortfall probability rho = beta / N_T. Steps where the balance
/// criterion passes contribute zero. Also fills the renewable abandonment
/// and utilization ratios (zero when the trace has no renewable energy).
/// Throws FlexError(Err::LengthMismatch) when the series is shorter than
/// the trace.
FlexIndices compute_indices(const EnergyBlock& block, const DispatchTrace& trace,
                            const std::vector<double>& net_load_mw);

/// Spilled renewable energy over total available renewable energy, in [0,1].
/// Throws FlexError(Err::DivisionByZero) when the trace holds no renewable
/// energy at all.
double abandonment_rate(const DispatchTrace& trace);

/// Per-step average of used/(used+spilled) renewable energy over the steps
/// that have any renewable energy; the literal per-step utilization ratio.
/// Throws FlexError(Err::DivisionByZero) when no step has renewable energy.
double utilization_rate(const DispatchTrace& trace);

}  // namespace flexblock
