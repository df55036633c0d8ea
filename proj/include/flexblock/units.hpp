#pragma once

#include <string>
#include <vector>

#include "flexblock/error.hpp"

namespace flexblock {

/// The five homogenized unit kinds of an energy block.
enum class UnitKind { Wind = 0, Pv = 1, Battery = 2, Hydrogen = 3, Gas = 4 };

constexpr int kNumUnitKinds = 5;

constexpr int kind_index(UnitKind k) { return static_cast<int>(k); }
const char* kind_name(UnitKind k);
bool kind_from_name(const std::string& name, UnitKind& out);

/// True for kinds that carry a storage state (battery, hydrogen tank, gas store).
constexpr bool kind_has_storage(UnitKind k) {
    return k == UnitKind::Battery || k == UnitKind::Hydrogen || k == UnitKind::Gas;
}

/// Lower heating value of hydrogen, used when demand series arrive in kg.
constexpr double kH2LhvKwhPerKg = 33.33;

/// Absolute tolerance on storage-balance residuals, MWh.
constexpr double kBalanceTolMwh = 1e-9;

/// Optional power-dependent efficiency: piecewise-linear eta over power,
/// evaluated at the previous dispatch point so the step model stays linear.
struct EfficiencyCurve {
    std::vector<double> power_mw;  // strictly increasing breakpoints
    std::vector<double> eta;       // same length, each in (0,1]

    bool empty() const { return power_mw.empty(); }
    double eval(double p_mw) const;
};

/// One homogenized energy unit: storage capacity, conversion efficiencies and
/// the static box bounds on power, ramp rate and state of charge.
struct UnitModel {
    UnitKind kind = UnitKind::Wind;
    double capacity_mwh = 0.0;
    double eta_gen = 1.0;
    double eta_load = 1.0;
    double eta_ex = 1.0;
    double p_gen_min_mw = 0.0;
    double p_gen_max_mw = 0.0;
    double p_load_min_mw = 0.0;
    double p_load_max_mw = 0.0;
    double ramp_gen_min_mw_per_min = 0.0;
    double ramp_gen_max_mw_per_min = 0.0;
    double ramp_load_min_mw_per_min = 0.0;
    double ramp_load_max_mw_per_min = 0.0;
    double soc_min = 0.0;
    double soc_max = 1.0;
    double soc_init = 0.0;
    EfficiencyCurve eta_gen_curve;   // optional; overrides eta_gen when set
    EfficiencyCurve eta_load_curve;  // optional; overrides eta_load when set

    /// Generation efficiency at the previous step's operating point.
    double eta_gen_at(double prev_p_gen_mw) const {
        return eta_gen_curve.empty() ? eta_gen : eta_gen_curve.eval(prev_p_gen_mw);
    }
    double eta_load_at(double prev_p_load_mw) const {
        return eta_load_curve.empty() ? eta_load : eta_load_curve.eval(prev_p_load_mw);
    }
};

/// Per-unit dynamic state: state of charge plus the previous dispatch point
/// (the ramp constraints and efficiency curves are anchored to it).
struct UnitState {
    double soc = 0.0;
    double last_p_gen_mw = 0.0;
    double last_p_load_mw = 0.0;
};

/// Per-unit control for one dispatch interval.
struct UnitControl {
    double p_gen_mw = 0.0;
    double p_load_mw = 0.0;
    double spill_mwh = 0.0;
};

/// External carrier energy exchanged in one interval (MWh).
/// Positive = supply into the unit, negative = demand drawn from it.
struct UnitDisturbance {
    double xi_mwh = 0.0;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool empty() const { return lo > hi; }
    bool contains(double v) const { return v >= lo && v <= hi; }
};

/// Box bounds on a unit's control and its one-step change, as produced by
/// feasible_control_bounds. Intervals may be empty; callers detect that.
struct ControlBounds {
    Interval p_gen_mw;
    Interval p_load_mw;
    Interval spill_mwh;
    Interval dp_gen_mw;
    Interval dp_load_mw;
};

/// One named violation of a unit-model invariant.
struct Violation {
    std::string field;
    std::string rule;
};

/// Advance one unit by one dispatch interval.
///
/// Applies the storage balance
///   C * (soc' - soc) = eta_ex*xi - eta_gen*p_gen*dt + eta_load*p_load*dt - w
/// for storage units, and enforces the same expression as a zero-residual
/// balance for zero-capacity units (wind, PV).
///
/// Throws FlexError(Err::BalanceViolation) when a zero-capacity balance
/// residual exceeds kBalanceTolMwh, FlexError(Err::SocOutOfRange) when the
/// update would leave [soc_min, soc_max].
UnitState step_unit(const UnitModel& model, const UnitState& state, const UnitControl& control,
                    const UnitDisturbance& dist, double dt_h);

/// Box bounds on (p_gen, p_load, spill) and their one-step changes for the
/// coming interval: static power limits intersected with ramp reachability
/// from the previous dispatch point and with the SOC energy headroom.
ControlBounds feasible_control_bounds(const UnitModel& model, const UnitState& state, double dt_h);

/// Checks every UnitModel invariant; returns one entry per violated rule.
std::vector<Violation> validate_unit(const UnitModel& model);

/// Default parameter set for each unit kind. Capacities follow the reference
/// block (wind/PV 60 MW, gas 30 MW, fuel cell/electrolyzer 30 MW, battery
/// 120 MWh at +/-10 MW); efficiencies and ramps are documented defaults and
/// are config-overridable.
UnitModel default_unit(UnitKind kind);

/// Initial state for a model (soc_init, idle powers).
UnitState initial_state(const UnitModel& model);

}  // namespace flexblock
