#include "flexblock/qp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

#include "flexblock/error.hpp"
#include "flexblock/log.hpp"

namespace flexblock {

namespace {

constexpr double kRidge = 1e-10;
constexpr double kStepTol = 1e-9;
constexpr double kDirTol = 1e-12;

struct Problem {
    Eigen::MatrixXd h;  // symmetrized + ridged
    Eigen::VectorXd f;
    const Eigen::MatrixXd& a;
    const Eigen::VectorXd& b;
    const Eigen::MatrixXd& a_eq;
    const Eigen::VectorXd& b_eq;
    double grad_scale = 1.0;  // for scale-invariant dual tolerances
    const char* tag = "main";

    int n() const { return static_cast<int>(f.size()); }
    int m() const { return static_cast<int>(b.size()); }
    int p() const { return static_cast<int>(b_eq.size()); }

    double row_tol(int i) const { return 1e-9 * std::max(1.0, std::abs(b(i))); }
};

// Solve the equality-constrained step: h p + Act' mu = -(h x + f), Act p = 0.
// Act stacks the equality rows and the working inequality rows.
bool solve_kkt(const Problem& pr, const Eigen::MatrixXd& act, const Eigen::VectorXd& x,
               Eigen::VectorXd& p, Eigen::VectorXd& mu) {
    const int n = pr.n();
    const int q = static_cast<int>(act.rows());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + q, n + q);
    kkt.topLeftCorner(n, n) = pr.h;
    if (q > 0) {
        kkt.topRightCorner(n, q) = act.transpose();
        kkt.bottomLeftCorner(q, n) = act;
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + q);
    rhs.head(n) = -(pr.h * x + pr.f);

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(kkt);
    Eigen::VectorXd sol = lu.solve(rhs);
    sol += lu.solve(rhs - kkt * sol);  // one refinement pass
    double resid = (kkt * sol - rhs).cwiseAbs().maxCoeff();
    double rhs_scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
    if (!sol.allFinite() || resid > 1e-7 * rhs_scale) {
        Eigen::FullPivLU<Eigen::MatrixXd> flu(kkt);
        if (!flu.isInvertible()) return false;
        sol = flu.solve(rhs);
        sol += flu.solve(rhs - kkt * sol);
        if (!sol.allFinite()) return false;
    }
    p = sol.head(n);
    mu = sol.tail(q);
    return true;
}

bool row_independent(const Eigen::MatrixXd& act, const Eigen::RowVectorXd& candidate) {
    if (act.rows() == 0) return candidate.norm() > 0.0;
    if (act.rows() >= act.cols()) return false;
    Eigen::MatrixXd stacked(act.rows() + 1, act.cols());
    stacked << act, candidate;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(stacked.transpose());
    return qr.rank() == stacked.rows();
}

// Primal active-set loop from a feasible starting point.
QpSolution active_set_loop(const Problem& pr, Eigen::VectorXd x, const QpOptions& opts) {
    const int n = pr.n();
    const int m = pr.m();
    const int p_eq = pr.p();
    const int max_iter = opts.max_iter > 0 ? opts.max_iter : 50 * (n + m + p_eq + 1);

    std::vector<int> working;          // inequality indices in the working set
    std::vector<char> in_working(m, 0);

    Eigen::MatrixXd act(p_eq, n);
    if (p_eq > 0) act = pr.a_eq;

    auto rebuild_act = [&]() {
        act.conservativeResize(p_eq + static_cast<int>(working.size()), n);
        for (std::size_t i = 0; i < working.size(); ++i)
            act.row(p_eq + static_cast<int>(i)) = pr.a.row(working[i]);
    };

    // Seed the working set with constraints already tight at x.
    for (int i = 0; i < m && static_cast<int>(working.size()) + p_eq < n; ++i) {
        double slack = pr.b(i) - pr.a.row(i).dot(x);
        if (std::abs(slack) <= pr.row_tol(i)) {
            rebuild_act();
            if (row_independent(act, pr.a.row(i))) {
                working.push_back(i);
                in_working[i] = 1;
            }
        }
    }
    rebuild_act();

    QpSolution sol;
    Eigen::VectorXd step, mu;
    int iter = 0;
    int quiet_full_steps = 0;  // guards against sub-tolerance dribble
    for (; iter < max_iter; ++iter) {
        if (!solve_kkt(pr, act, x, step, mu)) {
            // Singular working set: drop the most recent inequality member.
            if (!working.empty()) {
                LOG_DEBUG("qp[" << pr.tag << "] iter " << iter << ": kkt singular, pop row "
                                << working.back());
                in_working[working.back()] = 0;
                working.pop_back();
                rebuild_act();
                continue;
            }
            sol.status = QpStatus::MaxIterations;
            break;
        }

        const double step_size = step.cwiseAbs().maxCoeff();
        if (step_size <= kStepTol * (1.0 + x.cwiseAbs().maxCoeff()) || quiet_full_steps > 25) {
            quiet_full_steps = 0;
            // Stationary on the working set. Refit the multipliers by least
            // squares at the current point: the LU duals carry roundoff of
            // order eps * |grad|, which the penalty scales would otherwise
            // push above the optimality tolerance.
            if (act.rows() > 0) {
                Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> codt(act.transpose());
                mu = codt.solve(-(pr.h * x + pr.f));
            }

            // The member with the lowest constraint index leaves first
            // (Bland-style, avoids cycling on degenerate vertices).
            int drop = -1;
            int drop_row = -1;
            const double dual_tol = -(1e-7 + 1e-12 * pr.grad_scale);
            for (std::size_t i = 0; i < working.size(); ++i) {
                double lam = mu(p_eq + static_cast<int>(i));
                if (lam < dual_tol && (drop_row < 0 || working[i] < drop_row)) {
                    drop_row = working[i];
                    drop = static_cast<int>(i);
                }
            }
            if (drop < 0) {
                // Snap the iterate exactly onto the working rows before
                // emitting: the primal residuals there meet the penalty
                // multipliers in the complementarity products. The snap is
                // done only on exit so it cannot perturb the iteration.
                if (act.rows() > 0) {
                    Eigen::VectorXd r(act.rows());
                    r.head(p_eq) = pr.b_eq;
                    for (std::size_t i = 0; i < working.size(); ++i)
                        r(p_eq + static_cast<int>(i)) = pr.b(working[i]);
                    r -= act * x;
                    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(act);
                    x += cod.solve(r);
                    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> codt(
                        act.transpose());
                    mu = codt.solve(-(pr.h * x + pr.f));
                }
                sol.status = QpStatus::Optimal;
                sol.lambda_ineq = Eigen::VectorXd::Zero(m);
                for (std::size_t i = 0; i < working.size(); ++i)
                    sol.lambda_ineq(working[i]) = std::max(0.0, mu(p_eq + static_cast<int>(i)));
                sol.nu_eq = p_eq > 0 ? Eigen::VectorXd(mu.head(p_eq)) : Eigen::VectorXd(0);
                break;
            }
            LOG_DEBUG("qp[" << pr.tag << "] iter " << iter << ": drop row " << drop_row << " (mu "
                                 << mu(p_eq + drop) << ")");
            in_working[working[static_cast<std::size_t>(drop)]] = 0;
            working.erase(working.begin() + drop);
            rebuild_act();
            continue;
        }

        // Ratio test against constraints outside the working set.
        double alpha = 1.0;
        int blocker = -1;
        for (int i = 0; i < m; ++i) {
            if (in_working[i]) continue;
            double dir = pr.a.row(i).dot(step);
            if (dir <= kDirTol * std::max(1.0, pr.a.row(i).cwiseAbs().maxCoeff() * step_size))
                continue;
            double room = (pr.b(i) - pr.a.row(i).dot(x)) / dir;
            if (room < alpha - 1e-12) {
                alpha = std::max(room, 0.0);
                blocker = i;
            }
        }

        x += alpha * step;
        if (blocker < 0) {
            quiet_full_steps++;
            LOG_DEBUG("qp[" << pr.tag << "] iter " << iter << ": full step (|p| " << step_size
                            << ", thresh " << kStepTol * (1.0 + x.cwiseAbs().maxCoeff()) << ")");
        }
        if (blocker >= 0) {
            quiet_full_steps = 0;
            LOG_DEBUG("qp[" << pr.tag << "] iter " << iter << ": add row " << blocker << " (alpha " << alpha
                                 << ")");
            rebuild_act();
            if (row_independent(act, pr.a.row(blocker))) {
                working.push_back(blocker);
                in_working[blocker] = 1;
            }
            rebuild_act();
        }
    }

    if (iter >= max_iter) sol.status = QpStatus::MaxIterations;
    if (sol.lambda_ineq.size() == 0) sol.lambda_ineq = Eigen::VectorXd::Zero(m);
    if (sol.nu_eq.size() == 0) sol.nu_eq = Eigen::VectorXd::Zero(p_eq);
    sol.x_star = x;
    sol.iterations = iter;
    return sol;
}

double max_ineq_violation(const Problem& pr, const Eigen::VectorXd& x) {
    double worst = 0.0;
    for (int i = 0; i < pr.m(); ++i)
        worst = std::max(worst, pr.a.row(i).dot(x) - pr.b(i) - pr.row_tol(i));
    return worst;
}

}  // namespace

const char* qp_status_name(QpStatus s) {
    switch (s) {
        case QpStatus::Optimal: return "optimal";
        case QpStatus::MaxIterations: return "max_iterations";
        case QpStatus::Infeasible: return "infeasible";
    }
    return "?";
}

QpSolution solve_qp(const Eigen::MatrixXd& h, const Eigen::VectorXd& f,
                    const Eigen::MatrixXd& a_ineq, const Eigen::VectorXd& b_ineq,
                    const Eigen::MatrixXd& a_eq, const Eigen::VectorXd& b_eq,
                    const QpOptions& opts, const Eigen::VectorXd& x0_hint) {
    const int n = static_cast<int>(f.size());
    if (h.rows() != n || h.cols() != n)
        throw FlexError(Err::DimensionMismatch, "H must be n x n");
    if (a_ineq.rows() != b_ineq.size() || (a_ineq.rows() > 0 && a_ineq.cols() != n))
        throw FlexError(Err::DimensionMismatch, "inequality system dimensions");
    if (a_eq.rows() != b_eq.size() || (a_eq.rows() > 0 && a_eq.cols() != n))
        throw FlexError(Err::DimensionMismatch, "equality system dimensions");

    // Keep only an independent subset of the equality rows; consistency of the
    // dropped ones is checked through the minimum-norm starting point below.
    std::vector<int> eq_rows;
    Eigen::MatrixXd a_eq_red(0, n);
    Eigen::VectorXd b_eq_red(0);
    for (int i = 0; i < a_eq.rows(); ++i) {
        if (!row_independent(a_eq_red, a_eq.row(i))) continue;
        eq_rows.push_back(i);
        a_eq_red.conservativeResize(a_eq_red.rows() + 1, n);
        a_eq_red.row(a_eq_red.rows() - 1) = a_eq.row(i);
        b_eq_red.conservativeResize(b_eq_red.size() + 1);
        b_eq_red(b_eq_red.size() - 1) = b_eq(i);
    }

    const double h_scale = h.size() > 0 ? std::max(1.0, h.cwiseAbs().maxCoeff()) : 1.0;
    Problem pr{0.5 * (h + h.transpose()) + kRidge * h_scale *
                   Eigen::MatrixXd::Identity(n, n),
               f,
               a_ineq,
               b_ineq,
               a_eq_red,
               b_eq_red,
               std::max(h_scale, f.cwiseAbs().maxCoeff())};

    // A verified caller hint short-circuits the start-up work entirely.
    if (x0_hint.size() == n) {
        bool ok = true;
        for (int i = 0; ok && i < a_eq.rows(); ++i)
            if (std::abs(a_eq.row(i).dot(x0_hint) - b_eq(i)) >
                1e-9 * std::max(1.0, std::abs(b_eq(i))))
                ok = false;
        for (int i = 0; ok && i < pr.m(); ++i)
            if (a_ineq.row(i).dot(x0_hint) - b_ineq(i) > pr.row_tol(i)) ok = false;
        if (ok) {
            QpSolution sol = active_set_loop(pr, x0_hint, opts);
            Eigen::VectorXd nu_full = Eigen::VectorXd::Zero(static_cast<int>(a_eq.rows()));
            for (std::size_t i = 0; i < eq_rows.size(); ++i)
                nu_full(eq_rows[i]) = sol.nu_eq(static_cast<int>(i));
            sol.nu_eq = nu_full;
            sol.kkt_residual = kkt_residual(h, f, a_ineq, b_ineq, a_eq, b_eq, sol);
            if (sol.status == QpStatus::Optimal && sol.kkt_residual > opts.tol)
                sol.status = QpStatus::MaxIterations;
            return sol;
        }
    }

    // Equality-consistent starting point (minimum norm, against the full system).
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
    if (a_eq.rows() > 0) {
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a_eq);
        x0 = cod.solve(b_eq);
        double eq_resid = (a_eq * x0 - b_eq).cwiseAbs().maxCoeff();
        if (eq_resid > 1e-7 * std::max(1.0, b_eq.cwiseAbs().maxCoeff())) {
            QpSolution sol;
            sol.status = QpStatus::Infeasible;
            sol.x_star = x0;
            sol.lambda_ineq = Eigen::VectorXd::Zero(pr.m());
            sol.nu_eq = Eigen::VectorXd::Zero(static_cast<int>(a_eq.rows()));
            sol.kkt_residual = eq_resid;
            return sol;
        }
    }

    if (max_ineq_violation(pr, x0) > 0.0) {
        // Phase 1: shrink a shared violation slack t to zero.
        const int m = pr.m();
        Eigen::VectorXd viol(m);
        double worst = 0.0;
        for (int i = 0; i < m; ++i) {
            viol(i) = a_ineq.row(i).dot(x0) - b_ineq(i);
            worst = std::max(worst, viol(i));
        }

        // Minimize mostly t. A mild quadratic pull on (x - center) keeps the
        // KKT systems well conditioned; because the pull can win against M*t
        // when the feasible set lies far from the center, the pass is
        // repeated with the center moved to the previous solution (proximal
        // iteration) until t reaches zero or stalls.
        const double eps_pull = 1e-4;
        Eigen::MatrixXd h1 = eps_pull * Eigen::MatrixXd::Identity(n + 1, n + 1);
        h1(n, n) = 1.0;
        Eigen::VectorXd f1 = Eigen::VectorXd::Zero(n + 1);
        f1.head(n) = -eps_pull * x0;

        Eigen::MatrixXd a1(m + 1, n + 1);
        a1.setZero();
        a1.topLeftCorner(m, n) = a_ineq;
        for (int i = 0; i < m; ++i) a1(i, n) = viol(i) > pr.row_tol(i) ? -1.0 : 0.0;
        a1(m, n) = -1.0;  // t >= 0
        Eigen::VectorXd b1(m + 1);
        b1.head(m) = b_ineq;
        b1(m) = 0.0;

        Eigen::MatrixXd ae1(pr.p(), n + 1);
        if (pr.p() > 0) {
            ae1.setZero();
            ae1.leftCols(n) = a_eq_red;
        }

        Eigen::VectorXd z0(n + 1);
        z0.head(n) = x0;
        z0(n) = worst * (1.0 + 1e-9) + 1e-9;
        QpOptions aux_opts = opts;
        aux_opts.max_iter = opts.max_iter > 0 ? opts.max_iter : 50 * (n + m + pr.p() + 2);

        QpSolution aux_sol;
        double t_star = 0.0;
        const double big_m = 1e4 * std::max(1.0, worst);
        f1(n) = big_m;
        for (int pass = 0; pass < 6; ++pass) {
            Problem aux{h1, f1, a1, b1, ae1, b_eq_red, big_m, "phase1"};
            aux_sol = active_set_loop(aux, z0, aux_opts);
            double t_prev = z0(n);
            t_star = aux_sol.x_star(n);
            if (aux_sol.status != QpStatus::Optimal || t_star <= 1e-7 * std::max(1.0, worst))
                break;
            if (t_star > t_prev - 1e-12 * std::max(1.0, worst)) break;  // stalled: infeasible
            z0 = aux_sol.x_star;  // remains feasible; recenter the pull here
            f1.head(n) = -eps_pull * z0.head(n);
        }
        if (aux_sol.status != QpStatus::Optimal || t_star > 1e-7 * std::max(1.0, worst)) {
            if (log::enabled(log::Level::Debug)) {
                LOG_DEBUG("phase1 end: status=" << qp_status_name(aux_sol.status)
                                                << " t*=" << t_star << " worst=" << worst);
                for (int i = 0; i < m; ++i) {
                    double slack = a_ineq.row(i).dot(aux_sol.x_star.head(n)) - b_ineq(i);
                    if (slack > 1e-7 * std::max(1.0, worst))
                        LOG_DEBUG("  still violated row " << i << " by " << slack);
                }
            }
            QpSolution sol;
            // Only a converged Phase 1 proves emptiness.
            sol.status = aux_sol.status == QpStatus::Optimal ? QpStatus::Infeasible
                                                             : QpStatus::MaxIterations;
            sol.x_star = aux_sol.x_star.head(n);
            sol.lambda_ineq = Eigen::VectorXd::Zero(m);
            sol.nu_eq = Eigen::VectorXd::Zero(static_cast<int>(a_eq.rows()));
            sol.iterations = aux_sol.iterations;
            sol.kkt_residual = t_star;
            return sol;
        }
        x0 = aux_sol.x_star.head(n);
    }

    QpSolution sol = active_set_loop(pr, x0, opts);

    // Scatter the reduced equality multipliers back onto the original rows.
    Eigen::VectorXd nu_full = Eigen::VectorXd::Zero(static_cast<int>(a_eq.rows()));
    for (std::size_t i = 0; i < eq_rows.size(); ++i)
        nu_full(eq_rows[i]) = sol.nu_eq(static_cast<int>(i));
    sol.nu_eq = nu_full;

    sol.kkt_residual = kkt_residual(h, f, a_ineq, b_ineq, a_eq, b_eq, sol);
    if (sol.status == QpStatus::Optimal && sol.kkt_residual > opts.tol)
        sol.status = QpStatus::MaxIterations;
    return sol;
}

double kkt_residual(const Eigen::MatrixXd& h, const Eigen::VectorXd& f,
                    const Eigen::MatrixXd& a_ineq, const Eigen::VectorXd& b_ineq,
                    const Eigen::MatrixXd& a_eq, const Eigen::VectorXd& b_eq,
                    const QpSolution& sol) {
    const Eigen::VectorXd& x = sol.x_star;
    Eigen::VectorXd grad = 0.5 * (h + h.transpose()) * x + f;
    if (a_ineq.rows() > 0) grad += a_ineq.transpose() * sol.lambda_ineq;
    if (a_eq.rows() > 0) grad += a_eq.transpose() * sol.nu_eq;
    double worst = grad.size() > 0 ? grad.cwiseAbs().maxCoeff() : 0.0;

    for (int i = 0; i < a_ineq.rows(); ++i) {
        double slack = a_ineq.row(i).dot(x) - b_ineq(i);
        worst = std::max(worst, slack);                                   // primal violation
        worst = std::max(worst, -sol.lambda_ineq(i));                     // dual sign
        worst = std::max(worst, std::abs(sol.lambda_ineq(i) * slack));    // complementarity
    }
    for (int i = 0; i < a_eq.rows(); ++i)
        worst = std::max(worst, std::abs(a_eq.row(i).dot(x) - b_eq(i)));
    return worst;
}

void dump_qp(std::ostream& os, const Eigen::MatrixXd& h, const Eigen::VectorXd& f,
             const Eigen::MatrixXd& a_ineq, const Eigen::VectorXd& b_ineq,
             const Eigen::MatrixXd& a_eq, const Eigen::VectorXd& b_eq) {
    Eigen::IOFormat fmt(Eigen::FullPrecision, 0, " ", "\n", "", "", "", "");
    os << "# H " << h.rows() << " " << h.cols() << "\n" << h.format(fmt) << "\n";
    os << "# f " << f.size() << "\n" << f.transpose().format(fmt) << "\n";
    os << "# A " << a_ineq.rows() << " " << a_ineq.cols() << "\n";
    if (a_ineq.rows() > 0) os << a_ineq.format(fmt) << "\n";
    os << "# b " << b_ineq.size() << "\n";
    if (b_ineq.size() > 0) os << b_ineq.transpose().format(fmt) << "\n";
    os << "# Aeq " << a_eq.rows() << " " << a_eq.cols() << "\n";
    if (a_eq.rows() > 0) os << a_eq.format(fmt) << "\n";
    os << "# beq " << b_eq.size() << "\n";
    if (b_eq.size() > 0) os << b_eq.transpose().format(fmt) << "\n";
}

}  // namespace flexblock
