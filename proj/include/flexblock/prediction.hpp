#pragma once

#include <Eigen/Dense>

#include "flexblock/state_space.hpp"

namespace flexblock {

/// Condensation matrices for the stacked output prediction
///
///   Y = M_x1 x(k) + M_u1 u(k-1) + M_du1 DU + M_d1 Dstack
///
/// over n_p output steps, with DU the n_c stacked control increments.
/// The tracking (suffix 1) and constraint (suffix 2) families share the same
/// generator and horizons here, so the pairs coincide; both are kept because
/// they enter the problem in different roles.
struct PredictionMatrices {
    Eigen::MatrixXd m_x1, m_u1, m_delta_u1, m_d1;
    Eigen::MatrixXd m_x2, m_u2, m_delta_u2, m_d2;
    Eigen::MatrixXd lambda;  // (n_c*m) x (n_c*m) block lower-triangular identity
    Eigen::MatrixXd psi;     // (n_c*m) x m identity stack
    int n_p = 0;
    int n_c = 0;
};

/// Build the condensation matrices for an arbitrary (A, B, C, D) system.
PredictionMatrices build_prediction_matrices(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                             const Eigen::MatrixXd& c, const Eigen::MatrixXd& d,
                                             int n_p, int n_c);

}  // namespace flexblock
