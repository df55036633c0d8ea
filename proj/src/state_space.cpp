#include "flexblock/state_space.hpp"

#include <sstream>

namespace flexblock {

namespace {

void check_block_kinds(const EnergyBlock& block) {
    std::array<int, kNumUnitKinds> count{};
    for (const UnitModel& m : block.units) count[kind_index(m.kind)]++;
    for (int i = 0; i < kNumUnitKinds; ++i) {
        UnitKind k = static_cast<UnitKind>(i);
        if (count[i] == 0)
            throw FlexError(Err::MissingUnit, std::string("block has no ") + kind_name(k) + " slot");
        if (count[i] > 1)
            throw FlexError(Err::DuplicateUnit,
                            std::string("block has multiple ") + kind_name(k) + " slots");
    }
}

void check_models(const EnergyBlock& block) {
    std::vector<Violation> v = validate_block(block);
    if (!v.empty()) {
        std::ostringstream oss;
        oss << v.size() << " unit violation(s), first: " << v[0].field << ": " << v[0].rule;
        throw FlexError(Err::ValidationError, oss.str());
    }
}

}  // namespace

StateSpace build_state_space(const EnergyBlock& block, double dt_h, const BlockState* states) {
    if (dt_h <= 0.0) throw FlexError(Err::ValidationError, "dt_h must be positive");
    check_block_kinds(block);
    check_models(block);

    const UnitModel& w = block.unit(UnitKind::Wind);
    const UnitModel& pv = block.unit(UnitKind::Pv);
    const UnitModel& bat = block.unit(UnitKind::Battery);
    const UnitModel& h2 = block.unit(UnitKind::Hydrogen);
    const UnitModel& gas = block.unit(UnitKind::Gas);

    auto eta_gen = [&](const UnitModel& m) {
        return states ? m.eta_gen_at((*states)[kind_index(m.kind)].last_p_gen_mw) : m.eta_gen;
    };
    auto eta_load = [&](const UnitModel& m) {
        return states ? m.eta_load_at((*states)[kind_index(m.kind)].last_p_load_mw) : m.eta_load;
    };

    StateSpace ss;
    ss.dt_h = dt_h;

    ss.a = Eigen::MatrixXd::Zero(kNx, kNx);
    ss.a(2, 2) = ss.a(3, 3) = ss.a(4, 4) = 1.0;

    ss.c_out = Eigen::MatrixXd::Zero(kNy, kNx);
    ss.c_out(0, 2) = 1.0;
    ss.c_out(1, 3) = 1.0;

    ss.d = Eigen::MatrixXd::Zero(kNx, kNd);
    ss.d(0, 0) = 1.0;
    ss.d(1, 1) = 1.0;
    ss.d(3, 2) = 1.0;
    ss.d(4, 3) = 1.0;

    ss.b = Eigen::MatrixXd::Zero(kNx, kNu);
    ss.b(0, kUPgenWind) = -eta_gen(w) * dt_h;
    ss.b(1, kUPgenPv) = -eta_gen(pv) * dt_h;
    ss.b(2, kUPgenBattery) = -eta_gen(bat) * dt_h / bat.capacity_mwh;
    ss.b(2, kUPloadBattery) = eta_load(bat) * dt_h / bat.capacity_mwh;
    ss.b(3, kUPgenHydrogen) = -eta_gen(h2) * dt_h / h2.capacity_mwh;
    ss.b(3, kUPloadHydrogen) = eta_load(h2) * dt_h / h2.capacity_mwh;
    ss.b(4, kUPgenGas) = -eta_gen(gas) * dt_h / gas.capacity_mwh;
    // Spill removes energy from the renewable balance, same sign as generation.
    ss.b(0, kUSpillWind) = -1.0;
    ss.b(1, kUSpillPv) = -1.0;

    ss.u_min = Eigen::VectorXd::Zero(kNu);
    ss.u_max = Eigen::VectorXd::Zero(kNu);
    auto set_u = [&](int idx, double lo, double hi) {
        ss.u_min(idx) = lo;
        ss.u_max(idx) = hi;
    };
    set_u(kUPgenWind, w.p_gen_min_mw, w.p_gen_max_mw);
    set_u(kUPgenPv, pv.p_gen_min_mw, pv.p_gen_max_mw);
    set_u(kUPgenBattery, bat.p_gen_min_mw, bat.p_gen_max_mw);
    set_u(kUPloadBattery, bat.p_load_min_mw, bat.p_load_max_mw);
    set_u(kUPgenHydrogen, h2.p_gen_min_mw, h2.p_gen_max_mw);
    set_u(kUPloadHydrogen, h2.p_load_min_mw, h2.p_load_max_mw);
    set_u(kUPgenGas, gas.p_gen_min_mw, gas.p_gen_max_mw);
    set_u(kUSpillWind, 0.0, kBigBound);
    set_u(kUSpillPv, 0.0, kBigBound);

    const double dt_min = dt_h * 60.0;
    ss.du_min = Eigen::VectorXd::Constant(kNu, -kBigBound);
    ss.du_max = Eigen::VectorXd::Constant(kNu, kBigBound);
    auto set_du = [&](int idx, double lo_per_min, double hi_per_min) {
        ss.du_min(idx) = std::max(lo_per_min * dt_min, -kBigBound);
        ss.du_max(idx) = std::min(hi_per_min * dt_min, kBigBound);
    };
    set_du(kUPgenWind, w.ramp_gen_min_mw_per_min, w.ramp_gen_max_mw_per_min);
    set_du(kUPgenPv, pv.ramp_gen_min_mw_per_min, pv.ramp_gen_max_mw_per_min);
    set_du(kUPgenBattery, bat.ramp_gen_min_mw_per_min, bat.ramp_gen_max_mw_per_min);
    set_du(kUPloadBattery, bat.ramp_load_min_mw_per_min, bat.ramp_load_max_mw_per_min);
    set_du(kUPgenHydrogen, h2.ramp_gen_min_mw_per_min, h2.ramp_gen_max_mw_per_min);
    set_du(kUPloadHydrogen, h2.ramp_load_min_mw_per_min, h2.ramp_load_max_mw_per_min);
    set_du(kUPgenGas, gas.ramp_gen_min_mw_per_min, gas.ramp_gen_max_mw_per_min);

    ss.x_min = Eigen::VectorXd::Zero(kNx);
    ss.x_max = Eigen::VectorXd::Zero(kNx);
    ss.x_min(2) = bat.soc_min;
    ss.x_max(2) = bat.soc_max;
    ss.x_min(3) = h2.soc_min;
    ss.x_max(3) = h2.soc_max;
    ss.x_min(4) = gas.soc_min;
    ss.x_max(4) = gas.soc_max;

    return ss;
}

Eigen::Vector4d scale_disturbance(const EnergyBlock& block, const Eigen::Vector4d& xi_mwh) {
    Eigen::Vector4d d;
    d(0) = block.unit(UnitKind::Wind).eta_ex * xi_mwh(0);
    d(1) = block.unit(UnitKind::Pv).eta_ex * xi_mwh(1);
    d(2) = block.unit(UnitKind::Hydrogen).eta_ex * xi_mwh(2) /
           block.unit(UnitKind::Hydrogen).capacity_mwh;
    d(3) = block.unit(UnitKind::Gas).eta_ex * xi_mwh(3) / block.unit(UnitKind::Gas).capacity_mwh;
    return d;
}

Eigen::RowVectorXd electric_balance_row() {
    Eigen::RowVectorXd g = Eigen::RowVectorXd::Zero(kNu);
    g(kUPgenWind) = 1.0;
    g(kUPgenPv) = 1.0;
    g(kUPgenBattery) = 1.0;
    g(kUPloadBattery) = -1.0;
    g(kUPgenHydrogen) = 1.0;
    g(kUPloadHydrogen) = -1.0;
    g(kUPgenGas) = 1.0;
    return g;
}

}  // namespace flexblock
