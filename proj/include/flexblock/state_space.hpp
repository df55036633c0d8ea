#pragma once

#include <Eigen/Dense>

#include "flexblock/block.hpp"

namespace flexblock {

/// Column indices of the 9-dimensional control vector u.
enum UIdx : int {
    kUPgenWind = 0,
    kUPgenPv = 1,
    kUPgenBattery = 2,
    kUPloadBattery = 3,
    kUPgenHydrogen = 4,
    kUPloadHydrogen = 5,
    kUPgenGas = 6,
    kUSpillWind = 7,
    kUSpillPv = 8,
};

constexpr int kNx = 5;  // states: wind residual, pv residual, battery, hydrogen, gas SOC
constexpr int kNu = 9;
constexpr int kNd = 4;  // disturbances: xi_w, xi_pv, xi_h, xi_f (in state units)
constexpr int kNy = 2;  // outputs: battery SOC, hydrogen SOC

/// Wide-open bound used where a control has no meaningful static limit.
constexpr double kBigBound = 1e8;

/// Discrete state space x(k+1) = A x(k) + B u(k) + D d(k), y = C_out x.
///
/// States for wind and PV are per-step balance residuals that the dispatch
/// pins to zero; battery, hydrogen and gas states are SOC fractions. The
/// disturbance vector is expressed in state units: wind/PV inflows are
/// eta_ex * xi (MWh), hydrogen/gas inflows are eta_ex * xi / C (SOC per
/// step), so that D keeps its unit entries.
struct StateSpace {
    Eigen::MatrixXd a;      // kNx x kNx
    Eigen::MatrixXd b;      // kNx x kNu
    Eigen::MatrixXd c_out;  // kNy x kNx
    Eigen::MatrixXd d;      // kNx x kNd

    Eigen::VectorXd u_min, u_max;    // kNu, static control bounds
    Eigen::VectorXd du_min, du_max;  // kNu, per-step increment bounds
    Eigen::VectorXd x_min, x_max;    // kNx (renewable residual rows pinned [0,0])

    double dt_h = 0.0;

    Eigen::Vector2d y_min() const { return {x_min(2), x_min(3)}; }
    Eigen::Vector2d y_max() const { return {x_max(2), x_max(3)}; }
};

/// Assemble the block's state space for step length dt_h.
///
/// The optional `states` anchor power-dependent efficiency curves at the
/// previous dispatch point; models with constant efficiencies ignore it.
/// Throws FlexError(Err::MissingUnit / Err::DuplicateUnit) when the block's
/// slots do not carry exactly the five kinds, Err::ValidationError when a
/// unit model is invalid.
StateSpace build_state_space(const EnergyBlock& block, double dt_h,
                             const BlockState* states = nullptr);

/// Scale a raw disturbance (xi_w, xi_pv, xi_h, xi_f in MWh) into state units.
Eigen::Vector4d scale_disturbance(const EnergyBlock& block, const Eigen::Vector4d& xi_mwh);

/// Row vector g with g.dot(u) = total generation minus total consumption (MW).
Eigen::RowVectorXd electric_balance_row();

}  // namespace flexblock
