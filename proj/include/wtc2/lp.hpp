#pragma once

#include <vector>

#include <Eigen/Core>

namespace wtc2::lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
    Status status = Status::infeasible;
    double value = 0.0;
    Eigen::VectorXd x;
};

/// maximize c.x subject to A x <= b, x free.
///
/// Dense two-phase simplex with Bland's rule. Meant for the handful of rows
/// and variables that appear in rate-region systems, not for large problems.
Result maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

}  // namespace wtc2::lp
