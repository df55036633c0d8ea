#include "flexblock/mpc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "flexblock/log.hpp"

namespace flexblock {

void validate_config(const MpcConfig& cfg) {
    if (cfg.n_c < 1 || cfg.n_c > cfg.n_p)
        throw FlexError(Err::ValidationError, "horizons must satisfy 1 <= n_c <= n_p");
    if (cfg.dt_h <= 0.0) throw FlexError(Err::ValidationError, "dt_h must be positive");
    if (cfg.r_weights.size() != kNu)
        throw FlexError(Err::ValidationError, "r_weights must have one entry per control");
    if (cfg.q_weights.minCoeff() < 0.0 || cfg.r_weights.minCoeff() < 0.0)
        throw FlexError(Err::ValidationError, "weights must be non-negative");
    if (cfg.q_weights.maxCoeff() == 0.0 && cfg.r_weights.maxCoeff() == 0.0)
        throw FlexError(Err::ValidationError, "Q and R must not both be zero");
    if (cfg.slack_linear_penalty <= 0.0)
        throw FlexError(Err::ValidationError, "slack penalty must be positive");
}

QpProblem build_qp(const StateSpace& ss, const PredictionMatrices& pred,
                   const Eigen::VectorXd& x_k, const Eigen::VectorXd& u_prev,
                   const Eigen::MatrixXd& d_forecast, const Eigen::VectorXd& load_forecast,
                   const MpcConfig& cfg) {
    const int n_p = pred.n_p;
    const int n_c = pred.n_c;
    const int n_du = kNu * n_c;
    const int n_slack = 2 * n_c;
    const int n = n_du + n_slack;

    if (x_k.size() != kNx || u_prev.size() != kNu)
        throw FlexError(Err::DimensionMismatch, "state or control vector size");
    if (d_forecast.rows() != kNd || d_forecast.cols() < n_p)
        throw FlexError(Err::DimensionMismatch, "disturbance forecast must cover n_p steps");
    if (load_forecast.size() < n_p)
        throw FlexError(Err::DimensionMismatch, "load forecast must cover n_p steps");

    // Stacked weights, reference and disturbance.
    Eigen::VectorXd q_stack(kNy * n_p), y_ref(kNy * n_p);
    for (int j = 0; j < n_p; ++j) {
        q_stack.segment(kNy * j, kNy) = cfg.q_weights;
        y_ref.segment(kNy * j, kNy) = cfg.y_ref;
    }
    Eigen::VectorXd r_stack(n_du);
    for (int j = 0; j < n_c; ++j) r_stack.segment(kNu * j, kNu) = cfg.r_weights;
    Eigen::VectorXd d_stack(kNd * n_p);
    for (int j = 0; j < n_p; ++j) d_stack.segment(kNd * j, kNd) = d_forecast.col(j);

    // Free-response deviation: the disturbance feedthrough is included so the
    // predicted outputs match the recursion the units actually follow.
    Eigen::VectorXd e = y_ref - pred.m_x1 * x_k - pred.m_u1 * u_prev - pred.m_d1 * d_stack;

    const Eigen::MatrixXd& m = pred.m_delta_u1;
    Eigen::MatrixXd h_du = 2.0 * (m.transpose() * q_stack.asDiagonal() * m);
    h_du.diagonal() += 2.0 * r_stack;
    Eigen::VectorXd f_du = -2.0 * (m.transpose() * (q_stack.asDiagonal() * e));

    QpProblem qp;
    qp.n_du = n_du;
    qp.n_slack = n_slack;
    qp.h = Eigen::MatrixXd::Zero(n, n);
    qp.h.topLeftCorner(n_du, n_du) = h_du;
    qp.h.bottomRightCorner(n_slack, n_slack).diagonal().setConstant(
        2.0 * cfg.slack_quadratic_penalty);
    qp.f = Eigen::VectorXd::Zero(n);
    qp.f.head(n_du) = f_du;
    qp.f.tail(n_slack).setConstant(cfg.slack_linear_penalty);

    // Inequalities: [Pi; -Pi; Lambda; -Lambda; Mdu2; -Mdu2; slack >= 0].
    const int rows_pi = n_du;
    const int rows_lam = n_du;
    const int rows_y = kNy * n_p;
    const int n_rows = 2 * rows_pi + 2 * rows_lam + 2 * rows_y + n_slack;
    qp.a_ineq = Eigen::MatrixXd::Zero(n_rows, n);
    qp.b_ineq = Eigen::VectorXd::Zero(n_rows);

    Eigen::VectorXd du_min(n_du), du_max(n_du), u_min(n_du), u_max(n_du);
    for (int j = 0; j < n_c; ++j) {
        du_min.segment(kNu * j, kNu) = ss.du_min;
        du_max.segment(kNu * j, kNu) = ss.du_max;
        u_min.segment(kNu * j, kNu) = ss.u_min;
        u_max.segment(kNu * j, kNu) = ss.u_max;
    }
    // A state already outside the SOC band cannot jump back in one step;
    // widening the band to include it keeps the QP feasible while the
    // tracking objective pulls the output back inside.
    Eigen::Vector2d y_now = ss.c_out * x_k;
    Eigen::Vector2d y_lo = ss.y_min().cwiseMin(y_now);
    Eigen::Vector2d y_hi = ss.y_max().cwiseMax(y_now);
    Eigen::VectorXd y_min(rows_y), y_max(rows_y);
    for (int j = 0; j < n_p; ++j) {
        y_min.segment(kNy * j, kNy) = y_lo;
        y_max.segment(kNy * j, kNy) = y_hi;
    }

    int r = 0;
    qp.a_ineq.block(r, 0, rows_pi, n_du).setIdentity();
    qp.b_ineq.segment(r, rows_pi) = du_max;
    r += rows_pi;
    qp.a_ineq.block(r, 0, rows_pi, n_du) = -Eigen::MatrixXd::Identity(n_du, n_du);
    qp.b_ineq.segment(r, rows_pi) = -du_min;
    r += rows_pi;

    Eigen::VectorXd psi_u = pred.psi * u_prev;
    qp.a_ineq.block(r, 0, rows_lam, n_du) = pred.lambda;
    qp.b_ineq.segment(r, rows_lam) = u_max - psi_u;
    r += rows_lam;
    qp.a_ineq.block(r, 0, rows_lam, n_du) = -pred.lambda;
    qp.b_ineq.segment(r, rows_lam) = -u_min + psi_u;
    r += rows_lam;

    Eigen::VectorXd y_free = pred.m_x2 * x_k + pred.m_u2 * u_prev + pred.m_d2 * d_stack;
    qp.a_ineq.block(r, 0, rows_y, n_du) = pred.m_delta_u2;
    qp.b_ineq.segment(r, rows_y) = y_max - y_free;
    r += rows_y;
    qp.a_ineq.block(r, 0, rows_y, n_du) = -pred.m_delta_u2;
    qp.b_ineq.segment(r, rows_y) = -y_min + y_free;
    r += rows_y;

    qp.a_ineq.block(r, n_du, n_slack, n_slack) =
        -Eigen::MatrixXd::Identity(n_slack, n_slack);
    r += n_slack;

    // Equalities: per-step electric balance (with shed/surplus slack pair),
    // then the wind and PV energy balances that pin the spill variables.
    Eigen::RowVectorXd g = electric_balance_row();
    const Eigen::RowVectorXd wind_row = ss.b.row(0);
    const Eigen::RowVectorXd pv_row = ss.b.row(1);

    qp.a_eq = Eigen::MatrixXd::Zero(3 * n_c, n);
    qp.b_eq = Eigen::VectorXd::Zero(3 * n_c);
    for (int j = 0; j < n_c; ++j) {
        for (int l = 0; l <= j; ++l) qp.a_eq.block(j, kNu * l, 1, kNu) = g;
        qp.a_eq(j, n_du + j) = 1.0;          // shed acts as generation
        qp.a_eq(j, n_du + n_c + j) = -1.0;   // surplus acts as load
        qp.b_eq(j) = load_forecast(j) - g.dot(u_prev);

        const int jw = n_c + j;
        for (int l = 0; l <= j; ++l) qp.a_eq.block(jw, kNu * l, 1, kNu) = wind_row;
        qp.b_eq(jw) = -d_forecast(0, j) - wind_row.dot(u_prev);

        const int jp = 2 * n_c + j;
        for (int l = 0; l <= j; ++l) qp.a_eq.block(jp, kNu * l, 1, kNu) = pv_row;
        qp.b_eq(jp) = -d_forecast(1, j) - pv_row.dot(u_prev);
    }

    // Starting-point hint: track the renewable balances with generation up to
    // the static limit (spill takes the remainder), hold everything else and
    // let the slack pair absorb the load residual. The solver verifies it, so
    // an invalid hint merely falls back to the regular start-up path.
    qp.x_hint = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd u_run = u_prev;
    for (int j = 0; j < n_c; ++j) {
        auto track = [&](int row, int p_idx, int w_idx) {
            double coef = -ss.b(row, p_idx);  // eta * dt
            double avail = d_forecast(row, j);
            double p = std::min(ss.u_max(p_idx), avail / coef);
            p = std::max(p, ss.u_min(p_idx));
            qp.x_hint(kNu * j + p_idx) = p - u_run(p_idx);
            qp.x_hint(kNu * j + w_idx) = (avail - coef * p) - u_run(w_idx);
            u_run(p_idx) = p;
            u_run(w_idx) = avail - coef * p;
        };
        track(0, kUPgenWind, kUSpillWind);
        track(1, kUPgenPv, kUSpillPv);
        double resid = load_forecast(j) - g.dot(u_run);
        qp.x_hint(n_du + j) = std::max(0.0, resid);
        qp.x_hint(n_du + n_c + j) = std::max(0.0, -resid);
    }

    return qp;
}

EnergyBlock relaxed_soc_block(const EnergyBlock& block, double fraction) {
    EnergyBlock out = block;
    for (UnitKind k : {UnitKind::Battery, UnitKind::Hydrogen}) {
        UnitModel& m = out.unit(k);
        double span = m.soc_max - m.soc_min;
        m.soc_min = std::max(0.0, m.soc_min - fraction * span);
        m.soc_max = std::min(1.0, m.soc_max + fraction * span);
    }
    return out;
}

EnergyBlock stepping_block(const EnergyBlock& block, const BlockState& states) {
    EnergyBlock out = block;
    for (UnitKind k : {UnitKind::Battery, UnitKind::Hydrogen, UnitKind::Gas}) {
        UnitModel& m = out.unit(k);
        const UnitState& st = states[kind_index(k)];
        m.soc_min = std::min(m.soc_min, st.soc);
        m.soc_max = std::max(m.soc_max, st.soc);
    }
    return out;
}

namespace {

constexpr double kClampTol = 1e-7;

StateSpace relax_output_bounds(const StateSpace& ss, double fraction) {
    StateSpace out = ss;
    for (int row : {2, 3}) {
        double span = out.x_max(row) - out.x_min(row);
        out.x_min(row) = std::max(0.0, out.x_min(row) - fraction * span);
        out.x_max(row) = std::min(1.0, out.x_max(row) + fraction * span);
    }
    return out;
}

}  // namespace

DispatchTrace run_receding_horizon(const EnergyBlock& block, const RunInputs& in,
                                   const MpcConfig& cfg) {
    validate_config(cfg);
    const int n_steps = in.n_steps;
    if (n_steps <= 0) throw FlexError(Err::ValidationError, "n_steps must be positive");
    const auto series_len = [&](const Eigen::VectorXd& v) { return static_cast<int>(v.size()); };
    for (const Eigen::VectorXd* v :
         {&in.wind_avail_mw, &in.pv_avail_mw, &in.eload_mw, &in.h2_demand_mwh,
          &in.gas_supply_mwh}) {
        if (series_len(*v) < n_steps)
            throw FlexError(Err::LengthMismatch, "input series shorter than run length");
    }

    const double dt = cfg.dt_h;
    const double dt_min = dt * 60.0;

    bool has_curves = false;
    for (const UnitModel& m : block.units)
        if (!m.eta_gen_curve.empty() || !m.eta_load_curve.empty()) has_curves = true;

    BlockState states = initial_block_state(block);
    StateSpace ss = build_state_space(block, dt, &states);
    PredictionMatrices pred =
        build_prediction_matrices(ss.a, ss.b, ss.c_out, ss.d, cfg.n_p, cfg.n_c);

    const UnitModel& w_m = block.unit(UnitKind::Wind);
    const UnitModel& pv_m = block.unit(UnitKind::Pv);
    const Eigen::RowVectorXd balance_row = electric_balance_row();
    const bool has_w = block.has(UnitKind::Wind);
    const bool has_pv = block.has(UnitKind::Pv);
    const bool has_h2 = block.has(UnitKind::Hydrogen);
    const bool has_gas = block.has(UnitKind::Gas);

    const int horizon_len =
        std::min({series_len(in.wind_avail_mw), series_len(in.pv_avail_mw),
                  series_len(in.eload_mw), series_len(in.h2_demand_mwh),
                  series_len(in.gas_supply_mwh)});

    DispatchTrace trace;
    trace.dt_h = dt;
    trace.steps.reserve(static_cast<std::size_t>(n_steps));

    Eigen::VectorXd u_prev = Eigen::VectorXd::Zero(kNu);

    for (int k = 0; k < n_steps; ++k) {
        if (has_curves) {
            ss = build_state_space(block, dt, &states);
            pred = build_prediction_matrices(ss.a, ss.b, ss.c_out, ss.d, cfg.n_p, cfg.n_c);
        }

        Eigen::MatrixXd d_forecast(kNd, cfg.n_p);
        Eigen::VectorXd load_forecast(cfg.n_p);
        for (int j = 0; j < cfg.n_p; ++j) {
            int idx = cfg.forecast == ForecastMode::Persistence
                          ? k
                          : std::min(k + j, horizon_len - 1);
            Eigen::Vector4d xi;
            xi << (has_w ? in.wind_avail_mw(idx) * dt : 0.0),
                (has_pv ? in.pv_avail_mw(idx) * dt : 0.0),
                (has_h2 ? -in.h2_demand_mwh(idx) : 0.0),
                (has_gas ? in.gas_supply_mwh(idx) : 0.0);
            d_forecast.col(j) = scale_disturbance(block, xi);
            load_forecast(j) = in.eload_mw(idx);
        }

        // The tank saturates its exogenous draw at the storage floor (the
        // dispatcher clamps unserved demand the same way), so the predicted
        // drift is saturated against the output band too. Without this a
        // demand stretch that would empty the tank makes every output-bound
        // row infeasible at once.
        {
            double run = states[kind_index(UnitKind::Hydrogen)].soc;
            const double lo = std::min(ss.x_min(3), run);
            const double hi = std::max(ss.x_max(3), run);
            for (int j = 0; j < cfg.n_p; ++j) {
                double d2 = std::clamp(d_forecast(2, j), lo - run, hi - run);
                d_forecast(2, j) = d2;
                run += d2;
            }
        }

        Eigen::VectorXd x_k(kNx);
        x_k << states[0].soc, states[1].soc, states[2].soc, states[3].soc, states[4].soc;

        QpProblem qp = build_qp(ss, pred, x_k, u_prev, d_forecast, load_forecast, cfg);
        QpSolution sol = solve_qp(qp.h, qp.f, qp.a_ineq, qp.b_ineq, qp.a_eq, qp.b_eq, cfg.solver,
                                  qp.x_hint);

        StepStatus status = StepStatus::Ok;
        EnergyBlock step_block = block;
        if (sol.status != QpStatus::Optimal) {
            // Ladder step 2: widen the SOC output bounds and retry.
            StateSpace relaxed = relax_output_bounds(ss, cfg.soc_relax_fraction);
            qp = build_qp(relaxed, pred, x_k, u_prev, d_forecast, load_forecast, cfg);
            sol = solve_qp(qp.h, qp.f, qp.a_ineq, qp.b_ineq, qp.a_eq, qp.b_eq, cfg.solver,
                           qp.x_hint);
            if (sol.status == QpStatus::Optimal) {
                status = StepStatus::SocRelaxed;
                step_block = relaxed_soc_block(block, cfg.soc_relax_fraction);
            } else {
                status = StepStatus::Held;  // ladder step 3
                LOG_WARN("step " << k << ": QP " << qp_status_name(sol.status)
                                 << ", holding previous control");
                if (const char* dump = std::getenv("FLEXBLOCK_QP_DUMP")) {
                    std::ofstream f(dump);
                    dump_qp(f, qp.h, qp.f, qp.a_ineq, qp.b_ineq, qp.a_eq, qp.b_eq);
                    std::ofstream hf(std::string(dump) + ".hint");
                    hf.precision(17);
                    for (long i = 0; i < qp.x_hint.size(); ++i) hf << qp.x_hint(i) << "\n";
                }
            }
        }
        step_block = stepping_block(step_block, states);

        Eigen::VectorXd u = u_prev;
        if (status != StepStatus::Held) u += sol.x_star.head(kNu);

        // Actual per-step carrier energies.
        const double xi_w = has_w ? in.wind_avail_mw(k) * dt : 0.0;
        const double xi_pv = has_pv ? in.pv_avail_mw(k) * dt : 0.0;
        const double h2_demand = in.h2_demand_mwh(k);
        const double gas_offer = has_gas ? in.gas_supply_mwh(k) : 0.0;

        auto mark_clamped = [&] {
            if (!step_flagged(status)) status = StepStatus::Clamped;
        };

        // Renewable balance polish: pin spill to the exact residual so the
        // zero-capacity balance holds to machine precision.
        auto polish_renewable = [&](const UnitModel& m, double xi, int p_idx, int w_idx) {
            const double eta_g = m.eta_gen_at(states[kind_index(m.kind)].last_p_gen_mw);
            const double avail = m.eta_ex * xi;
            double p = std::max(0.0, u(p_idx));
            p = std::min(p, avail / (eta_g * dt));
            if (std::abs(p - u(p_idx)) > kClampTol) mark_clamped();
            u(p_idx) = p;
            u(w_idx) = std::max(0.0, avail - eta_g * p * dt);
        };
        polish_renewable(w_m, xi_w, kUPgenWind, kUSpillWind);
        polish_renewable(pv_m, xi_pv, kUPgenPv, kUSpillPv);

        // Battery feasibility clamp (only binds when the forecast misled the QP).
        {
            const UnitModel& m = step_block.unit(UnitKind::Battery);
            const UnitState& st = states[kind_index(UnitKind::Battery)];
            const double eta_g = m.eta_gen_at(st.last_p_gen_mw);
            const double eta_l = m.eta_load_at(st.last_p_load_mw);
            double cap = std::max(
                0.0, ((st.soc - m.soc_min) * m.capacity_mwh + eta_l * u(kUPloadBattery) * dt) /
                         (eta_g * dt));
            if (u(kUPgenBattery) > cap + kClampTol) {
                u(kUPgenBattery) = cap;
                mark_clamped();
            }
            double cap_l = std::max(
                0.0, ((m.soc_max - st.soc) * m.capacity_mwh + eta_g * u(kUPgenBattery) * dt) /
                         (eta_l * dt));
            if (u(kUPloadBattery) > cap_l + kClampTol) {
                u(kUPloadBattery) = cap_l;
                mark_clamped();
            }
        }

        // Gas store: draw from the offer only what fits, and never burn below
        // the storage floor.
        double xi_gas_eff = 0.0;
        if (has_gas) {
            const UnitModel& m = step_block.unit(UnitKind::Gas);
            const UnitState& st = states[kind_index(UnitKind::Gas)];
            const double eta_g = m.eta_gen_at(st.last_p_gen_mw);
            double p = std::max(0.0, u(kUPgenGas));
            for (int pass = 0; pass < 4; ++pass) {
                xi_gas_eff = std::min(
                    gas_offer,
                    ((m.soc_max - st.soc) * m.capacity_mwh + eta_g * p * dt) / m.eta_ex);
                double cap = std::max(0.0, ((st.soc - m.soc_min) * m.capacity_mwh +
                                            m.eta_ex * xi_gas_eff) /
                                               (eta_g * dt));
                if (p <= cap + 1e-12) break;
                p = cap;
            }
            if (u(kUPgenGas) > p + kClampTol) mark_clamped();
            u(kUPgenGas) = std::min(std::max(0.0, u(kUPgenGas)), p);
        }

        // Hydrogen tank: burn feasibility first, then serve demand from the
        // remaining headroom, then cap charging against the tank ceiling.
        double h2_served = 0.0;
        if (has_h2) {
            const UnitModel& m = step_block.unit(UnitKind::Hydrogen);
            const UnitState& st = states[kind_index(UnitKind::Hydrogen)];
            const double eta_g = m.eta_gen_at(st.last_p_gen_mw);
            const double eta_l = m.eta_load_at(st.last_p_load_mw);
            const double stored = (st.soc - m.soc_min) * m.capacity_mwh;
            const double room = (m.soc_max - st.soc) * m.capacity_mwh;

            double cap_g =
                std::max(0.0, (stored + eta_l * u(kUPloadHydrogen) * dt) / (eta_g * dt));
            if (u(kUPgenHydrogen) > cap_g + kClampTol) {
                u(kUPgenHydrogen) = cap_g;
                mark_clamped();
            }

            double headroom =
                stored + eta_l * u(kUPloadHydrogen) * dt - eta_g * u(kUPgenHydrogen) * dt;
            h2_served = std::min(h2_demand, std::max(0.0, headroom / m.eta_ex));

            double cap_l = std::max(0.0, (room + eta_g * u(kUPgenHydrogen) * dt +
                                          m.eta_ex * h2_served) /
                                             (eta_l * dt));
            if (u(kUPloadHydrogen) > cap_l + kClampTol) {
                u(kUPloadHydrogen) = cap_l;
                mark_clamped();
                headroom = stored + eta_l * u(kUPloadHydrogen) * dt -
                           eta_g * u(kUPgenHydrogen) * dt;
                h2_served = std::min(h2_served, std::max(0.0, headroom / m.eta_ex));
            }
        }

        // Electric balance accounting from the final control.
        const double eload = in.eload_mw(k);
        const double net = balance_row.dot(u) - eload;
        const double shed = std::max(0.0, -net);
        const double surplus = std::max(0.0, net);
        if (surplus > kClampTol && !step_flagged(status)) status = StepStatus::Dumped;

        // Step every unit through the homogenized balance.
        Eigen::Vector4d xi_raw;
        xi_raw << xi_w, xi_pv, -h2_served, xi_gas_eff;

        auto control_of = [&](UnitKind kind) {
            UnitControl c;
            switch (kind) {
                case UnitKind::Wind:
                    c = {u(kUPgenWind), 0.0, u(kUSpillWind)};
                    break;
                case UnitKind::Pv:
                    c = {u(kUPgenPv), 0.0, u(kUSpillPv)};
                    break;
                case UnitKind::Battery:
                    c = {u(kUPgenBattery), u(kUPloadBattery), 0.0};
                    break;
                case UnitKind::Hydrogen:
                    c = {u(kUPgenHydrogen), u(kUPloadHydrogen), 0.0};
                    break;
                case UnitKind::Gas:
                    c = {u(kUPgenGas), 0.0, 0.0};
                    break;
            }
            return c;
        };
        auto dist_of = [&](UnitKind kind) {
            switch (kind) {
                case UnitKind::Wind: return UnitDisturbance{xi_raw(0)};
                case UnitKind::Pv: return UnitDisturbance{xi_raw(1)};
                case UnitKind::Battery: return UnitDisturbance{0.0};
                case UnitKind::Hydrogen: return UnitDisturbance{xi_raw(2)};
                case UnitKind::Gas: return UnitDisturbance{xi_raw(3)};
            }
            return UnitDisturbance{0.0};
        };

        TraceStep step;
        step.t_min = k * dt_min;
        step.x = x_k;
        step.d = scale_disturbance(block, xi_raw);
        step.eload_mw = eload;
        step.shed_mw = shed;
        step.surplus_mw = surplus;
        step.served_load_mw = eload - shed;
        step.h2_demand_mwh = h2_demand;
        step.h2_served_mwh = h2_served;
        step.status = status;
        step.qp_kkt_residual = sol.kkt_residual;
        step.qp_iterations = sol.iterations;

        LOG_DEBUG("step " << k << ": status=" << static_cast<int>(status)
                          << " qp_iters=" << sol.iterations << " kkt=" << sol.kkt_residual
                          << " shed=" << shed);

        BlockState next = states;
        for (int i = 0; i < kNumUnitKinds; ++i) {
            UnitKind kind = static_cast<UnitKind>(i);
            next[i] = step_unit(step_block.units[i], states[i], control_of(kind), dist_of(kind),
                                dt);
        }
        states = next;
        step.u = u;
        trace.steps.push_back(std::move(step));
        u_prev = u;
    }

    trace.final_x.resize(kNx);
    trace.final_x << states[0].soc, states[1].soc, states[2].soc, states[3].soc, states[4].soc;
    return trace;
}

}  // namespace flexblock
