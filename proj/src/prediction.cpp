#include "flexblock/prediction.hpp"

#include <vector>

#include "flexblock/error.hpp"

namespace flexblock {

PredictionMatrices build_prediction_matrices(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                             const Eigen::MatrixXd& c, const Eigen::MatrixXd& d,
                                             int n_p, int n_c) {
    const int nx = static_cast<int>(a.rows());
    const int nu = static_cast<int>(b.cols());
    const int ny = static_cast<int>(c.rows());
    const int nd = static_cast<int>(d.cols());
    if (a.cols() != nx || b.rows() != nx || c.cols() != nx || d.rows() != nx)
        throw FlexError(Err::DimensionMismatch, "inconsistent state-space dimensions");
    if (n_c < 1 || n_c > n_p)
        throw FlexError(Err::ValidationError, "horizons must satisfy 1 <= n_c <= n_p");

    // Powers of A and the partial sums S_j = sum_{i=0}^{j-1} C A^i B.
    std::vector<Eigen::MatrixXd> a_pow(static_cast<std::size_t>(n_p) + 1);
    a_pow[0] = Eigen::MatrixXd::Identity(nx, nx);
    for (int j = 1; j <= n_p; ++j) a_pow[j] = a_pow[j - 1] * a;

    std::vector<Eigen::MatrixXd> s(static_cast<std::size_t>(n_p) + 1);
    s[0] = Eigen::MatrixXd::Zero(ny, nu);
    for (int j = 1; j <= n_p; ++j) s[j] = s[j - 1] + c * a_pow[j - 1] * b;

    PredictionMatrices pm;
    pm.n_p = n_p;
    pm.n_c = n_c;

    pm.m_x1.resize(ny * n_p, nx);
    pm.m_u1.resize(ny * n_p, nu);
    pm.m_delta_u1 = Eigen::MatrixXd::Zero(ny * n_p, nu * n_c);
    pm.m_d1 = Eigen::MatrixXd::Zero(ny * n_p, nd * n_p);
    for (int j = 1; j <= n_p; ++j) {
        pm.m_x1.middleRows(ny * (j - 1), ny) = c * a_pow[j];
        pm.m_u1.middleRows(ny * (j - 1), ny) = s[j];
        for (int l = 1; l <= std::min(j, n_c); ++l)
            pm.m_delta_u1.block(ny * (j - 1), nu * (l - 1), ny, nu) = s[j - l + 1];
        for (int l = 1; l <= j; ++l)
            pm.m_d1.block(ny * (j - 1), nd * (l - 1), ny, nd) = c * a_pow[j - l] * d;
    }

    pm.m_x2 = pm.m_x1;
    pm.m_u2 = pm.m_u1;
    pm.m_delta_u2 = pm.m_delta_u1;
    pm.m_d2 = pm.m_d1;

    pm.lambda = Eigen::MatrixXd::Zero(nu * n_c, nu * n_c);
    for (int j = 0; j < n_c; ++j)
        for (int l = 0; l <= j; ++l)
            pm.lambda.block(nu * j, nu * l, nu, nu) = Eigen::MatrixXd::Identity(nu, nu);

    pm.psi.resize(nu * n_c, nu);
    for (int j = 0; j < n_c; ++j)
        pm.psi.middleRows(nu * j, nu) = Eigen::MatrixXd::Identity(nu, nu);

    return pm;
}

}  // namespace flexblock
