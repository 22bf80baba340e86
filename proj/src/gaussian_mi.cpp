#include "wtc2/gaussian_mi.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

namespace wtc2 {
namespace {

Eigen::MatrixXd select(const Eigen::MatrixXd& m, std::span<const int> rows, std::span<const int> cols)
{
    Eigen::MatrixXd out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out(i, j) = m(rows[i], cols[j]);
        }
    }
    return out;
}

}  // namespace

double logdet_floored(const Eigen::MatrixXd& sym, bool* floored)
{
    if (sym.rows() == 0) {
        return 0.0;
    }
    if (sym.rows() == 1) {
        double v = sym(0, 0);
        if (v < kEigenFloor) {
            if (floored) *floored = true;
            v = kEigenFloor;
        }
        return std::log(v);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double v = es.eigenvalues()(i);
        if (v < kEigenFloor) {
            if (floored) *floored = true;
            v = kEigenFloor;
        }
        acc += std::log(v);
    }
    return acc;
}

Eigen::MatrixXd conditional_cov(const Eigen::MatrixXd& cov,
                                std::span<const int> a,
                                std::span<const int> given,
                                bool* floored)
{
    Eigen::MatrixXd saa = select(cov, a, a);
    if (given.empty()) {
        return saa;
    }
    Eigen::MatrixXd sag = select(cov, a, given);
    Eigen::MatrixXd sgg = select(cov, given, given);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sgg);
    Eigen::VectorXd inv = es.eigenvalues();
    for (Eigen::Index i = 0; i < inv.size(); ++i) {
        if (inv(i) < kEigenFloor) {
            if (floored) *floored = true;
            inv(i) = 0.0;  // pseudo-inverse: drop the null directions
        } else {
            inv(i) = 1.0 / inv(i);
        }
    }
    Eigen::MatrixXd pinv = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
    Eigen::MatrixXd out = saa - sag * pinv * sag.transpose();
    return 0.5 * (out + out.transpose());
}

double gaussian_cond_mi_bits(const Eigen::MatrixXd& cov,
                             std::span<const int> a,
                             std::span<const int> b,
                             std::span<const int> c,
                             bool* floored)
{
    std::vector<int> bc(b.begin(), b.end());
    bc.insert(bc.end(), c.begin(), c.end());

    const Eigen::MatrixXd a_given_c = conditional_cov(cov, a, c, floored);
    const Eigen::MatrixXd a_given_bc = conditional_cov(cov, a, bc, floored);
    const double nats = 0.5 * (logdet_floored(a_given_c, floored) - logdet_floored(a_given_bc, floored));
    return nats / std::numbers::ln2;
}

bool is_psd(const Eigen::MatrixXd& sym, double tol)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

}  // namespace wtc2
