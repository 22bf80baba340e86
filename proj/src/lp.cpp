#include "wtc2/lp.hpp"

#include <cmath>
#include <limits>

namespace wtc2::lp {
namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kFeasEps = 1e-9;
constexpr int kMaxIterations = 100000;

struct Tableau {
    Eigen::MatrixXd t;          // rows 0..m-1 constraints, row m objective; last column rhs
    std::vector<int> basis;     // basic column per constraint row
    std::vector<bool> blocked;  // columns that may not enter

    int rows() const { return static_cast<int>(basis.size()); }
    int cols() const { return static_cast<int>(t.cols()) - 1; }

    void pivot(int r, int c)
    {
        t.row(r) /= t(r, c);
        for (int i = 0; i < t.rows(); ++i) {
            if (i != r && t(i, c) != 0.0) {
                t.row(i) -= t(i, c) * t.row(r);
            }
        }
        basis[r] = c;
    }

    // Bland's rule simplex on the objective row; false when unbounded.
    bool run()
    {
        const int m = rows();
        for (int it = 0; it < kMaxIterations; ++it) {
            int enter = -1;
            for (int j = 0; j < cols(); ++j) {
                if (!blocked[j] && t(m, j) < -kPivotEps) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) {
                return true;
            }
            int leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i) {
                if (t(i, enter) > kPivotEps) {
                    const double ratio = t(i, cols()) / t(i, enter);
                    if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
                        best = ratio;
                        leave = i;
                    }
                }
            }
            if (leave < 0) {
                return false;
            }
            pivot(leave, enter);
        }
        return true;
    }
};

}  // namespace

Result maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b)
{
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());

    // Columns: x+ (n), x- (n), slacks (m), artificials (one per negative rhs row).
    std::vector<int> art_row;
    for (int i = 0; i < m; ++i) {
        if (b(i) < 0.0) art_row.push_back(i);
    }
    const int n_art = static_cast<int>(art_row.size());
    const int ncol = 2 * n + m + n_art;

    Tableau tab;
    tab.t = Eigen::MatrixXd::Zero(m + 1, ncol + 1);
    tab.basis.assign(m, -1);
    tab.blocked.assign(ncol, false);

    int next_art = 2 * n + m;
    for (int i = 0; i < m; ++i) {
        const double sign = b(i) < 0.0 ? -1.0 : 1.0;
        tab.t.block(i, 0, 1, n) = sign * A.row(i);
        tab.t.block(i, n, 1, n) = -sign * A.row(i);
        tab.t(i, 2 * n + i) = sign;
        tab.t(i, ncol) = sign * b(i);
        if (b(i) < 0.0) {
            tab.t(i, next_art) = 1.0;
            tab.basis[i] = next_art++;
        } else {
            tab.basis[i] = 2 * n + i;
        }
    }

    Result res;
    if (n_art > 0) {
        // Phase I: maximize -sum(artificials).
        tab.t.row(m).setZero();
        for (int k = 0; k < n_art; ++k) {
            tab.t(m, 2 * n + m + k) = 1.0;
        }
        for (int r : art_row) {
            tab.t.row(m) -= tab.t.row(r);
        }
        tab.run();
        if (tab.t(m, ncol) < -kFeasEps) {
            res.status = Status::infeasible;
            return res;
        }
        for (int i = 0; i < m; ++i) {
            if (tab.basis[i] >= 2 * n + m) {
                for (int j = 0; j < 2 * n + m; ++j) {
                    if (std::abs(tab.t(i, j)) > kPivotEps) {
                        tab.pivot(i, j);
                        break;
                    }
                }
            }
        }
        for (int k = 0; k < n_art; ++k) {
            tab.blocked[2 * n + m + k] = true;
        }
    }

    // Phase II.
    tab.t.row(m).setZero();
    for (int j = 0; j < n; ++j) {
        tab.t(m, j) = -c(j);
        tab.t(m, n + j) = c(j);
    }
    for (int i = 0; i < m; ++i) {
        const double coef = tab.t(m, tab.basis[i]);
        if (coef != 0.0) {
            tab.t.row(m) -= coef * tab.t.row(i);
        }
    }
    if (!tab.run()) {
        res.status = Status::unbounded;
        return res;
    }

    Eigen::VectorXd u = Eigen::VectorXd::Zero(ncol);
    for (int i = 0; i < m; ++i) {
        u(tab.basis[i]) = tab.t(i, ncol);
    }
    res.status = Status::optimal;
    res.x = u.head(n) - u.segment(n, n);
    res.value = c.dot(res.x);
    return res;
}

}  // namespace wtc2::lp
