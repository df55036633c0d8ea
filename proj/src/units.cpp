#include "flexblock/units.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace flexblock {

const char* kind_name(UnitKind k) {
    switch (k) {
        case UnitKind::Wind: return "wind";
        case UnitKind::Pv: return "pv";
        case UnitKind::Battery: return "battery";
        case UnitKind::Hydrogen: return "hydrogen";
        case UnitKind::Gas: return "gas";
    }
    return "?";
}

bool kind_from_name(const std::string& name, UnitKind& out) {
    for (int i = 0; i < kNumUnitKinds; ++i) {
        UnitKind k = static_cast<UnitKind>(i);
        if (name == kind_name(k)) {
            out = k;
            return true;
        }
    }
    return false;
}

double EfficiencyCurve::eval(double p_mw) const {
    if (power_mw.empty()) return 1.0;
    if (p_mw <= power_mw.front()) return eta.front();
    if (p_mw >= power_mw.back()) return eta.back();
    auto it = std::upper_bound(power_mw.begin(), power_mw.end(), p_mw);
    std::size_t hi = static_cast<std::size_t>(it - power_mw.begin());
    std::size_t lo = hi - 1;
    double t = (p_mw - power_mw[lo]) / (power_mw[hi] - power_mw[lo]);
    return eta[lo] + t * (eta[hi] - eta[lo]);
}

UnitState step_unit(const UnitModel& model, const UnitState& state, const UnitControl& control,
                    const UnitDisturbance& dist, double dt_h) {
    if (dt_h <= 0.0) throw FlexError(Err::ValidationError, "dt_h must be positive");

    const double eta_gen = model.eta_gen_at(state.last_p_gen_mw);
    const double eta_load = model.eta_load_at(state.last_p_load_mw);
    const double delta_mwh = model.eta_ex * dist.xi_mwh - eta_gen * control.p_gen_mw * dt_h +
                             eta_load * control.p_load_mw * dt_h - control.spill_mwh;

    UnitState next = state;
    next.last_p_gen_mw = control.p_gen_mw;
    next.last_p_load_mw = control.p_load_mw;

    if (model.capacity_mwh <= 0.0) {
        if (std::abs(delta_mwh) > kBalanceTolMwh) {
            std::ostringstream oss;
            oss << kind_name(model.kind) << " balance residual " << delta_mwh << " MWh exceeds "
                << kBalanceTolMwh;
            throw FlexError(Err::BalanceViolation, oss.str());
        }
        return next;  // no storage state to update
    }

    double soc = state.soc + delta_mwh / model.capacity_mwh;
    if (soc < model.soc_min - kBalanceTolMwh || soc > model.soc_max + kBalanceTolMwh) {
        std::ostringstream oss;
        oss << kind_name(model.kind) << " soc " << soc << " outside [" << model.soc_min << ", "
            << model.soc_max << "]";
        throw FlexError(Err::SocOutOfRange, oss.str());
    }
    next.soc = std::clamp(soc, model.soc_min, model.soc_max);
    return next;
}

ControlBounds feasible_control_bounds(const UnitModel& model, const UnitState& state, double dt_h) {
    const double dt_min = dt_h * 60.0;
    const double eta_gen = model.eta_gen_at(state.last_p_gen_mw);
    const double eta_load = model.eta_load_at(state.last_p_load_mw);

    ControlBounds b;
    b.dp_gen_mw = {model.ramp_gen_min_mw_per_min * dt_min, model.ramp_gen_max_mw_per_min * dt_min};
    b.dp_load_mw = {model.ramp_load_min_mw_per_min * dt_min,
                    model.ramp_load_max_mw_per_min * dt_min};

    b.p_gen_mw = {std::max(model.p_gen_min_mw, state.last_p_gen_mw + b.dp_gen_mw.lo),
                  std::min(model.p_gen_max_mw, state.last_p_gen_mw + b.dp_gen_mw.hi)};
    b.p_load_mw = {std::max(model.p_load_min_mw, state.last_p_load_mw + b.dp_load_mw.lo),
                   std::min(model.p_load_max_mw, state.last_p_load_mw + b.dp_load_mw.hi)};

    if (model.capacity_mwh > 0.0) {
        // SOC headroom: discharging may not cross soc_min, charging not soc_max.
        const double dischargeable = (state.soc - model.soc_min) * model.capacity_mwh;
        const double chargeable = (model.soc_max - state.soc) * model.capacity_mwh;
        b.p_gen_mw.hi = std::min(b.p_gen_mw.hi, std::max(0.0, dischargeable) / (eta_gen * dt_h));
        b.p_load_mw.hi = std::min(b.p_load_mw.hi, std::max(0.0, chargeable) / (eta_load * dt_h));
    }

    // Spill is only meaningful for units with an external inflow; the battery
    // has no external carrier, so its spill is pinned to zero.
    if (model.kind == UnitKind::Battery) {
        b.spill_mwh = {0.0, 0.0};
    } else {
        b.spill_mwh = {0.0, std::numeric_limits<double>::infinity()};
    }
    return b;
}

namespace {

void require(std::vector<Violation>& out, bool ok, const char* field, const std::string& rule) {
    if (!ok) out.push_back({field, rule});
}

void check_curve(std::vector<Violation>& out, const EfficiencyCurve& curve, const char* field) {
    if (curve.empty()) return;
    require(out, curve.power_mw.size() == curve.eta.size(), field,
            "efficiency curve breakpoints and values must have equal length");
    require(out, std::is_sorted(curve.power_mw.begin(), curve.power_mw.end()), field,
            "efficiency curve breakpoints must be increasing");
    for (double e : curve.eta)
        require(out, e > 0.0 && e <= 1.0, field, "efficiency must lie in (0,1]");
}

}  // namespace

std::vector<Violation> validate_unit(const UnitModel& model) {
    std::vector<Violation> v;
    const bool storage = kind_has_storage(model.kind);

    require(v, model.capacity_mwh >= 0.0, "capacity_mwh", "capacity must be non-negative");
    if (storage) {
        std::string rule = std::string(kind_name(model.kind)) + " must have positive storage capacity";
        require(v, model.capacity_mwh > 0.0, "capacity_mwh", rule);
    } else {
        std::string rule = std::string(kind_name(model.kind)) + " must have zero storage capacity";
        require(v, model.capacity_mwh == 0.0, "capacity_mwh", rule);
    }

    require(v, model.eta_gen > 0.0 && model.eta_gen <= 1.0, "eta_gen",
            "efficiency must lie in (0,1]");
    require(v, model.eta_load > 0.0 && model.eta_load <= 1.0, "eta_load",
            "efficiency must lie in (0,1]");
    require(v, model.eta_ex > 0.0 && model.eta_ex <= 1.0, "eta_ex",
            "efficiency must lie in (0,1]");
    check_curve(v, model.eta_gen_curve, "eta_gen_curve");
    check_curve(v, model.eta_load_curve, "eta_load_curve");

    require(v, model.p_gen_min_mw >= 0.0, "p_gen_min_mw", "power bounds must be non-negative");
    require(v, model.p_load_min_mw >= 0.0, "p_load_min_mw", "power bounds must be non-negative");
    require(v, model.p_gen_min_mw <= model.p_gen_max_mw, "p_gen_max_mw",
            "p_gen_min must not exceed p_gen_max");
    require(v, model.p_load_min_mw <= model.p_load_max_mw, "p_load_max_mw",
            "p_load_min must not exceed p_load_max");

    if (model.kind == UnitKind::Wind || model.kind == UnitKind::Pv) {
        require(v, model.p_load_max_mw == 0.0, "p_load_max_mw",
                "renewable units are pure generators (p_load_max must be 0)");
    }

    require(v, model.ramp_gen_min_mw_per_min <= model.ramp_gen_max_mw_per_min,
            "ramp_gen_max_mw_per_min", "ramp_gen_min must not exceed ramp_gen_max");
    require(v, model.ramp_load_min_mw_per_min <= model.ramp_load_max_mw_per_min,
            "ramp_load_max_mw_per_min", "ramp_load_min must not exceed ramp_load_max");

    if (model.capacity_mwh > 0.0) {
        require(v, model.soc_min >= 0.0 && model.soc_max <= 1.0 && model.soc_min <= model.soc_max,
                "soc_min", "soc bounds must satisfy 0 <= soc_min <= soc_max <= 1");
        require(v, model.soc_init >= model.soc_min && model.soc_init <= model.soc_max, "soc_init",
                "soc_init must lie in [soc_min, soc_max]");
    }
    return v;
}

UnitModel default_unit(UnitKind kind) {
    UnitModel m;
    m.kind = kind;
    switch (kind) {
        case UnitKind::Wind:
        case UnitKind::Pv:
            m.capacity_mwh = 0.0;
            m.eta_gen = 1.0;
            m.p_gen_max_mw = 60.0;
            // Curtailment reacts within one step; the ramp box is left wide open.
            m.ramp_gen_min_mw_per_min = -1e6;
            m.ramp_gen_max_mw_per_min = 1e6;
            break;
        case UnitKind::Battery:
            m.capacity_mwh = 120.0;
            m.eta_gen = 0.95;
            m.eta_load = 0.95;
            m.p_gen_max_mw = 10.0;
            m.p_load_max_mw = 10.0;
            m.ramp_gen_min_mw_per_min = -2.0;
            m.ramp_gen_max_mw_per_min = 2.0;
            m.ramp_load_min_mw_per_min = -2.0;
            m.ramp_load_max_mw_per_min = 2.0;
            m.soc_min = 0.1;
            m.soc_max = 0.9;
            m.soc_init = 0.45;
            break;
        case UnitKind::Hydrogen:
            m.capacity_mwh = 240.0;
            m.eta_gen = 0.55;   // fuel cell
            m.eta_load = 0.70;  // electrolyzer
            m.p_gen_max_mw = 30.0;
            m.p_load_max_mw = 30.0;
            m.ramp_gen_min_mw_per_min = -1.0;
            m.ramp_gen_max_mw_per_min = 1.0;
            m.ramp_load_min_mw_per_min = -1.0;
            m.ramp_load_max_mw_per_min = 1.0;
            m.soc_min = 0.1;
            m.soc_max = 0.9;
            m.soc_init = 0.40;
            break;
        case UnitKind::Gas:
            m.capacity_mwh = 240.0;
            m.eta_gen = 0.40;
            m.p_gen_max_mw = 30.0;
            m.ramp_gen_min_mw_per_min = -0.5;
            m.ramp_gen_max_mw_per_min = 0.5;
            m.soc_min = 0.1;
            m.soc_max = 0.9;
            m.soc_init = 0.50;
            break;
    }
    return m;
}

UnitState initial_state(const UnitModel& model) {
    UnitState s;
    s.soc = model.capacity_mwh > 0.0 ? model.soc_init : 0.0;
    return s;
}

}  // namespace flexblock
