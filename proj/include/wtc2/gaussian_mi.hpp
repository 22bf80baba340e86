#pragma once

#include <span>

#include <Eigen/Core>

namespace wtc2 {

/// Eigenvalue floor used when a (conditional) covariance is singular.
inline constexpr double kEigenFloor = 1e-12;

/// Natural log-determinant of a symmetric PSD matrix. Eigenvalues below
/// kEigenFloor are replaced by the floor; `floored` is set when that happens.
double logdet_floored(const Eigen::MatrixXd& sym, bool* floored = nullptr);

/// Covariance of the variables `a` conditioned on the variables `given`
/// (Schur complement of the `given` block; pseudo-inverse with floored
/// eigenvalues when that block is singular).
Eigen::MatrixXd conditional_cov(const Eigen::MatrixXd& cov,
                                std::span<const int> a,
                                std::span<const int> given,
                                bool* floored = nullptr);

/// I(A;B|C) in bits for jointly Gaussian variables with joint covariance `cov`,
/// evaluated as 1/2 log2 det(Cov[A|C]) / det(Cov[A|B,C]).
double gaussian_cond_mi_bits(const Eigen::MatrixXd& cov,
                             std::span<const int> a,
                             std::span<const int> b,
                             std::span<const int> c,
                             bool* floored = nullptr);

/// True when all eigenvalues of the symmetric matrix are >= -tol.
bool is_psd(const Eigen::MatrixXd& sym, double tol = 1e-10);

}  // namespace wtc2
