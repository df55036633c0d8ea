#pragma once

#include <Eigen/Dense>
#include <iosfwd>

namespace flexblock {

enum class QpStatus { Optimal, MaxIterations, Infeasible };

const char* qp_status_name(QpStatus s);

/// Result of a dense QP solve. `lambda_ineq` and `nu_eq` are the multipliers
/// of the inequality and equality systems (zero for inactive inequalities).
struct QpSolution {
    Eigen::VectorXd x_star;
    Eigen::VectorXd lambda_ineq;
    Eigen::VectorXd nu_eq;
    QpStatus status = QpStatus::MaxIterations;
    int iterations = 0;
    double kkt_residual = 0.0;
};

/// Options for solve_qp. max_iter = 0 picks 50 * (n + rows) automatically.
struct QpOptions {
    double tol = 1e-8;
    int max_iter = 0;
};

/// Minimize 1/2 x'Hx + f'x subject to a_ineq x <= b_ineq, a_eq x = b_eq.
///
/// Primal active-set iteration on the ridged Hessian (1e-10 relative ridge,
/// so a PSD H is accepted). Infeasible starts go through a Phase-1 pass that
/// minimizes a single violation slack with the same machinery. Tie-breaking
/// is by lowest constraint index, so identical inputs give identical output.
/// `x0_hint`, when it has the right size and verifies feasible, replaces the
/// minimum-norm starting point and skips Phase 1.
QpSolution solve_qp(const Eigen::MatrixXd& h, const Eigen::VectorXd& f,
                    const Eigen::MatrixXd& a_ineq, const Eigen::VectorXd& b_ineq,
                    const Eigen::MatrixXd& a_eq, const Eigen::VectorXd& b_eq,
                    const QpOptions& opts = {},
                    const Eigen::VectorXd& x0_hint = Eigen::VectorXd());

/// Independent optimality check: the max over stationarity, primal violation,
/// dual negativity and complementary slackness, each in the infinity norm.
double kkt_residual(const Eigen::MatrixXd& h, const Eigen::VectorXd& f,
                    const Eigen::MatrixXd& a_ineq, const Eigen::VectorXd& b_ineq,
                    const Eigen::MatrixXd& a_eq, const Eigen::VectorXd& b_eq,
                    const QpSolution& sol);

/// Plain-text dump of (H, f, A, b, Aeq, beq) for external cross-checking.
void dump_qp(std::ostream& os, const Eigen::MatrixXd& h, const Eigen::VectorXd& f,
             const Eigen::MatrixXd& a_ineq, const Eigen::VectorXd& b_ineq,
             const Eigen::MatrixXd& a_eq, const Eigen::VectorXd& b_eq);

}  // namespace flexblock
