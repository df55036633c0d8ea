#pragma once

#include <Eigen/Dense>
#include <vector>

#include "flexblock/prediction.hpp"
#include "flexblock/qp_solver.hpp"
#include "flexblock/state_space.hpp"

namespace flexblock {

enum class ForecastMode { Perfect, Persistence };

/// Receding-horizon controller configuration.
struct MpcConfig {
    int n_p = 12;
    int n_c = 6;
    Eigen::Vector2d q_weights{1.0, 1.0};             // output tracking weights
    Eigen::VectorXd r_weights =
        Eigen::VectorXd::Constant(kNu, 0.01);        // increment suppression
    double dt_h = 5.0 / 60.0;
    Eigen::Vector2d y_ref{0.45, 0.40};               // battery / hydrogen SOC plan
    double slack_linear_penalty = 1e4;               // per MW of shed or dumped power
    double slack_quadratic_penalty = 1.0;
    double soc_relax_fraction = 0.01;                // ladder step 2 widening
    ForecastMode forecast = ForecastMode::Perfect;
    QpOptions solver{1e-6, 0};  // residual target sized for the slack penalties
};

/// Throws FlexError(Err::ValidationError) on bad horizons or weights.
void validate_config(const MpcConfig& cfg);

/// Condensed QP over z = [DU (kNu*n_c); shed (n_c); surplus (n_c)].
///
/// Inequalities follow the row blocks [Pi; -Pi; Lambda; -Lambda; Mdu2; -Mdu2]
/// plus non-negativity of the slacks; equalities carry the per-step electric
/// power balance (with slack pair) followed by the per-step wind and PV
/// energy balances that pin the spill variables.
struct QpProblem {
    Eigen::MatrixXd h;
    Eigen::VectorXd f;
    Eigen::MatrixXd a_ineq;
    Eigen::VectorXd b_ineq;
    Eigen::MatrixXd a_eq;
    Eigen::VectorXd b_eq;
    Eigen::VectorXd x_hint;  // feasible starting point when one is evident
    int n_du = 0;            // leading DU block size, kNu * n_c
    int n_slack = 0;         // trailing slack count, 2 * n_c
};

/// Assemble the condensed QP for one receding-horizon step.
///
/// `d_forecast` holds one scaled disturbance column per prediction step
/// (kNd x n_p), `load_forecast` the electric load (MW) per step. Throws
/// FlexError(Err::DimensionMismatch) when forecasts do not cover n_p steps.
QpProblem build_qp(const StateSpace& ss, const PredictionMatrices& pred,
                   const Eigen::VectorXd& x_k, const Eigen::VectorXd& u_prev,
                   const Eigen::MatrixXd& d_forecast, const Eigen::VectorXd& load_forecast,
                   const MpcConfig& cfg);

/// Per-step solve outcome recorded in the trace.
enum class StepStatus : int {
    Ok = 0,         // QP optimal as posed
    SocRelaxed = 1, // solved after widening the SOC output bounds
    Held = 2,       // ladder exhausted; previous control held
    Clamped = 3,    // a storage feasibility clamp changed the applied control
    Dumped = 4,     // overgeneration absorbed by the surplus slack
};

/// True when the step's electric balance (with shed only) cannot be asserted.
constexpr bool step_flagged(StepStatus s) {
    return s == StepStatus::Held || s == StepStatus::Clamped || s == StepStatus::Dumped;
}

struct TraceStep {
    double t_min = 0.0;
    Eigen::VectorXd x;      // state before applying u (kNx)
    Eigen::VectorXd u;      // applied control (kNu)
    Eigen::VectorXd d;      // applied scaled disturbance (kNd)
    double eload_mw = 0.0;
    double shed_mw = 0.0;
    double surplus_mw = 0.0;
    double served_load_mw = 0.0;
    double h2_demand_mwh = 0.0;
    double h2_served_mwh = 0.0;
    StepStatus status = StepStatus::Ok;
    double qp_kkt_residual = 0.0;
    int qp_iterations = 0;
};

/// Full dispatch record. `final_x` closes the recursion so that
/// x(k+1) = A x(k) + B u(k) + D d(k) can be checked on the last row too.
struct DispatchTrace {
    std::vector<TraceStep> steps;
    Eigen::VectorXd final_x;
    double dt_h = 0.0;

    std::size_t size() const { return steps.size(); }
};

/// Inputs consumed by one receding-horizon run; the series are per-step and
/// must cover at least n_steps entries (the lookahead is padded by holding
/// the last value).
struct RunInputs {
    Eigen::VectorXd wind_avail_mw;
    Eigen::VectorXd pv_avail_mw;
    Eigen::VectorXd eload_mw;
    Eigen::VectorXd h2_demand_mwh;    // per-step tank draw, >= 0
    Eigen::VectorXd gas_supply_mwh;   // per-step store inflow offer, >= 0
    int n_steps = 0;
};

/// Run the receding-horizon dispatch: at each step solve the condensed QP,
/// apply the first increment, step every unit and record the trace.
DispatchTrace run_receding_horizon(const EnergyBlock& block, const RunInputs& in,
                                   const MpcConfig& cfg);

/// Battery/hydrogen SOC bounds widened by `fraction` of their span
/// (relaxation ladder step 2). Exposed so trace replays can reproduce the
/// exact bounds a SocRelaxed step was executed under.
EnergyBlock relaxed_soc_block(const EnergyBlock& block, double fraction);

/// Bounds widened (exactly) to include the current state, so that a state
/// left outside the operating band by a relaxed step can still be stepped.
EnergyBlock stepping_block(const EnergyBlock& block, const BlockState& states);

}  // namespace flexblock
