#include "flexblock/flexibility.hpp"

#include <algorithm>
#include <cmath>

namespace flexblock {

double net_load(const std::vector<double>& eload_mw, const std::vector<double>& renewable_avail_mw,
                std::size_t t) {
    if (t >= eload_mw.size() || t >= renewable_avail_mw.size())
        throw FlexError(Err::IndexOutOfRange, "net_load index beyond series");
    return renewable_avail_mw[t] - eload_mw[t];
}

std::vector<double> net_load_series(const std::vector<double>& eload_mw,
                                    const std::vector<double>& renewable_avail_mw) {
    if (eload_mw.size() != renewable_avail_mw.size())
        throw FlexError(Err::LengthMismatch, "load and renewable series lengths differ");
    std::vector<double> net(eload_mw.size());
    for (std::size_t t = 0; t < net.size(); ++t) net[t] = renewable_avail_mw[t] - eload_mw[t];
    return net;
}

MarginPoint provided_margin(const EnergyBlock& block, const BlockState& states, double dt_h) {
    const double dt_min = dt_h * 60.0;
    MarginPoint mp;

    auto up_response = [&](UnitKind kind) {
        if (!block.has(kind)) return;
        const UnitModel& m = block.unit(kind);
        const UnitState& st = states[kind_index(kind)];
        double power = std::max(0.0, m.p_gen_max_mw - st.last_p_gen_mw);
        mp.power_up_mw += power;
        mp.ramp_up_mw_per_min +=
            std::max(0.0, std::min(m.ramp_gen_max_mw_per_min, power / dt_min));
        if (m.capacity_mwh > 0.0) {
            mp.energy_up_mwh += std::max(0.0, st.soc - m.soc_min) * m.capacity_mwh *
                                m.eta_gen_at(st.last_p_gen_mw);
        }
    };
    auto down_response = [&](UnitKind kind) {
        if (!block.has(kind)) return;
        const UnitModel& m = block.unit(kind);
        const UnitState& st = states[kind_index(kind)];
        double power = std::max(0.0, m.p_load_max_mw - st.last_p_load_mw);
        mp.power_down_mw += power;
        mp.ramp_down_mw_per_min +=
            std::max(0.0, std::min(m.ramp_load_max_mw_per_min, power / dt_min));
        if (m.capacity_mwh > 0.0) {
            mp.energy_down_mwh += std::max(0.0, m.soc_max - st.soc) * m.capacity_mwh /
                                  m.eta_load_at(st.last_p_load_mw);
        }
    };
    auto curtail_response = [&](UnitKind kind) {
        if (!block.has(kind)) return;
        const UnitModel& m = block.unit(kind);
        const UnitState& st = states[kind_index(kind)];
        double power = std::max(0.0, st.last_p_gen_mw);
        mp.power_down_mw += power;
        mp.ramp_down_mw_per_min +=
            std::max(0.0, std::min(-m.ramp_gen_min_mw_per_min, power / dt_min));
    };

    up_response(UnitKind::Battery);
    up_response(UnitKind::Hydrogen);
    up_response(UnitKind::Gas);
    down_response(UnitKind::Battery);
    down_response(UnitKind::Hydrogen);
    curtail_response(UnitKind::Wind);
    curtail_response(UnitKind::Pv);
    return mp;
}

MarginPoint required_margin(const std::vector<double>& net_load_mw, std::size_t t, double dt_h) {
    if (t + 1 >= net_load_mw.size())
        throw FlexError(Err::IndexOutOfRange, "required_margin needs samples at t and t+1");
    const double dt_min = dt_h * 60.0;
    const double now = net_load_mw[t];
    const double next = net_load_mw[t + 1];

    MarginPoint mp;
    mp.power_up_mw = std::max(0.0, -now);
    mp.power_down_mw = std::max(0.0, now);

    const double delta = next - now;
    const double rate = std::abs(delta) / dt_min;
    if (delta < 0.0)
        mp.ramp_up_mw_per_min = rate;
    else if (delta > 0.0)
        mp.ramp_down_mw_per_min = rate;

    const double integral = 0.5 * (now + next) * dt_h;  // trapezoid over the step
    mp.energy_up_mwh = std::max(0.0, -integral);
    mp.energy_down_mwh = std::max(0.0, integral);
    return mp;
}

BalanceFlags balance_check(const MarginPoint& provided, const MarginPoint& required) {
    BalanceFlags f;
    f.ramp_up = provided.ramp_up_mw_per_min >= required.ramp_up_mw_per_min;
    f.ramp_down = provided.ramp_down_mw_per_min >= required.ramp_down_mw_per_min;
    f.power_up = provided.power_up_mw >= required.power_up_mw;
    f.power_down = provided.power_down_mw >= required.power_down_mw;
    f.energy_up = provided.energy_up_mwh >= required.energy_up_mwh;
    f.energy_down = provided.energy_down_mwh >= required.energy_down_mwh;
    return f;
}

namespace {

/// Operating point the dispatcher saw when deciding step t: the recorded
/// state of charge plus the previous step's dispatch.
BlockState states_at(const DispatchTrace& trace, std::size_t t) {
    BlockState st{};
    const TraceStep& row = trace.steps[t];
    for (int i = 0; i < kNumUnitKinds; ++i) st[i].soc = row.x(i);
    if (t > 0) {
        const Eigen::VectorXd& u = trace.steps[t - 1].u;
        st[kind_index(UnitKind::Wind)].last_p_gen_mw = u(kUPgenWind);
        st[kind_index(UnitKind::Pv)].last_p_gen_mw = u(kUPgenPv);
        st[kind_index(UnitKind::Battery)].last_p_gen_mw = u(kUPgenBattery);
        st[kind_index(UnitKind::Battery)].last_p_load_mw = u(kUPloadBattery);
        st[kind_index(UnitKind::Hydrogen)].last_p_gen_mw = u(kUPgenHydrogen);
        st[kind_index(UnitKind::Hydrogen)].last_p_load_mw = u(kUPloadHydrogen);
        st[kind_index(UnitKind::Gas)].last_p_gen_mw = u(kUPgenGas);
    }
    return st;
}

struct RenewableTotals {
    double spilled_mwh = 0.0;
    double available_mwh = 0.0;  // generated*dt + spilled
};

RenewableTotals renewable_totals(const DispatchTrace& trace) {
    RenewableTotals tot;
    for (const TraceStep& s : trace.steps) {
        double gen = (s.u(kUPgenWind) + s.u(kUPgenPv)) * trace.dt_h;
        double spill = s.u(kUSpillWind) + s.u(kUSpillPv);
        tot.spilled_mwh += spill;
        tot.available_mwh += gen + spill;
    }
    return tot;
}

}  // namespace

Envelope build_envelope(const EnergyBlock& block, const DispatchTrace& trace,
                        const std::vector<double>& net_load_mw) {
    const std::size_t n = trace.size();
    if (net_load_mw.size() < n)
        throw FlexError(Err::LengthMismatch, "net-load series shorter than trace");

    std::vector<double> net(net_load_mw.begin(), net_load_mw.begin() + static_cast<long>(n));
    net.push_back(net_load_mw.size() > n ? net_load_mw[n] : net.back());

    Envelope env;
    env.dt_h = trace.dt_h;
    env.points.reserve(n);
    for (std::size_t t = 0; t < n; ++t) {
        EnvelopePoint pt;
        pt.t_min = trace.steps[t].t_min;
        pt.provided = provided_margin(block, states_at(trace, t), trace.dt_h);
        pt.required = required_margin(net, t, trace.dt_h);
        env.points.push_back(pt);
    }
    return env;
}

FlexIndices compute_indices(const EnergyBlock& block, const DispatchTrace& trace,
                            const std::vector<double>& net_load_mw) {
    Envelope env = build_envelope(block, trace, net_load_mw);

    FlexIndices ix;
    double ramp_sum = 0.0, power_sum = 0.0, energy_sum = 0.0;
    for (const EnvelopePoint& pt : env.points) {
        const MarginPoint& p = pt.provided;
        const MarginPoint& r = pt.required;
        double ramp = std::max(0.0, r.ramp_up_mw_per_min - p.ramp_up_mw_per_min) +
                      std::max(0.0, r.ramp_down_mw_per_min - p.ramp_down_mw_per_min);
        double power = std::max(0.0, r.power_up_mw - p.power_up_mw) +
                       std::max(0.0, r.power_down_mw - p.power_down_mw);
        double energy = std::max(0.0, r.energy_up_mwh - p.energy_up_mwh) +
                        std::max(0.0, r.energy_down_mwh - p.energy_down_mwh);
        ramp_sum += ramp;
        power_sum += power;
        energy_sum += energy;
        if (ramp > 0.0 || power > 0.0 || energy > 0.0) ix.beta++;
    }

    const std::size_t n = env.size();
    ix.rho = n > 0 ? static_cast<double>(ix.beta) / static_cast<double>(n) : 0.0;
    ix.e_ir_mw_per_min = ix.rho * ramp_sum;
    ix.e_io_mw = ix.rho * power_sum;
    ix.e_ic_mwh = ix.rho * energy_sum;

    RenewableTotals tot = renewable_totals(trace);
    ix.abandonment = tot.available_mwh > 0.0 ? tot.spilled_mwh / tot.available_mwh : 0.0;
    bool any = false;
    double util_sum = 0.0;
    std::size_t util_n = 0;
    for (const TraceStep& s : trace.steps) {
        double used = (s.u(kUPgenWind) + s.u(kUPgenPv)) * trace.dt_h;
        double avail = used + s.u(kUSpillWind) + s.u(kUSpillPv);
        if (avail > 0.0) {
            util_sum += used / avail;
            util_n++;
            any = true;
        }
    }
    ix.utilization = any ? util_sum / static_cast<double>(util_n) : 0.0;
    return ix;
}

double abandonment_rate(const DispatchTrace& trace) {
    RenewableTotals tot = renewable_totals(trace);
    if (tot.available_mwh <= 0.0)
        throw FlexError(Err::DivisionByZero, "trace holds no renewable energy");
    return tot.spilled_mwh / tot.available_mwh;
}

double utilization_rate(const DispatchTrace& trace) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const TraceStep& s : trace.steps) {
        double used = (s.u(kUPgenWind) + s.u(kUPgenPv)) * trace.dt_h;
        double avail = used + s.u(kUSpillWind) + s.u(kUSpillPv);
        if (avail > 0.0) {
            sum += used / avail;
            n++;
        }
    }
    if (n == 0) throw FlexError(Err::DivisionByZero, "no step carries renewable energy");
    return sum / static_cast<double>(n);
}

}  // namespace flexblock
