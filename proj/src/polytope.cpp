#include "wtc2/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/LU>

#include "wtc2/errors.hpp"
#include "wtc2/lp.hpp"

namespace wtc2 {
namespace {

constexpr double kParallelTol = 1e-12;
constexpr double kCollinearTol = 1e-12;

double cross(Point2 o, Point2 a, Point2 b)
{
    return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

double dist(Point2 a, Point2 b)
{
    return std::hypot(a.r1 - b.r1, a.r2 - b.r2);
}

// True when a is not a strict left turn on o -> a -> p. Nearly collinear
// triples only count when a lies between o and p; a direction reversal
// (possible after round-off in the sort key) keeps a.
bool drop_middle(Point2 o, Point2 a, Point2 p)
{
    const double c = cross(o, a, p);
    if (c <= 0.0) return true;
    if (c > kCollinearTol * dist(o, a) * dist(o, p)) return false;
    return (a.r1 - o.r1) * (p.r1 - a.r1) + (a.r2 - o.r2) * (p.r2 - a.r2) > 0.0;
}

struct NormRow {
    Eigen::VectorXd a;
    double b;
};

// "<=" rows scaled to unit normal. Zero rows are either dropped (trivially
// true) or flag the system as infeasible.
std::vector<NormRow> normalized_rows(const HalfspaceSystem& sys, bool& infeasible)
{
    infeasible = false;
    auto [A, b] = sys.as_le();
    std::vector<NormRow> out;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        const double norm = A.row(i).norm();
        if (norm < kParallelTol) {
            if (b(i) < -kGeomTol) infeasible = true;
            continue;
        }
        out.push_back({A.row(i).transpose() / norm, b(i) / norm});
    }
    return out;
}

HalfspaceSystem from_rows(int dim, const std::vector<NormRow>& rows)
{
    HalfspaceSystem sys(dim);
    for (const auto& r : rows) {
        sys.add_le(std::vector<double>(r.a.data(), r.a.data() + r.a.size()), r.b);
    }
    return sys;
}

HalfspaceSystem infeasible_system(int dim)
{
    HalfspaceSystem sys(dim);
    sys.add_le(std::vector<double>(dim, 0.0), -1.0);
    return sys;
}

bool lp_feasible(const std::vector<NormRow>& rows, int dim)
{
    if (rows.empty()) return true;
    Eigen::MatrixXd A(rows.size(), dim);
    Eigen::VectorXd b(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        A.row(i) = rows[i].a.transpose();
        b(i) = rows[i].b;
    }
    return lp::maximize(Eigen::VectorXd::Zero(dim), A, b).status != lp::Status::infeasible;
}

}  // namespace

HalfspaceSystem::HalfspaceSystem(int dimension) : dim_(dimension)
{
    if (dimension < 1 || dimension > 6) {
        throw DimensionError("halfspace systems support 1 <= d <= 6, got " + std::to_string(dimension));
    }
}

HalfspaceSystem& HalfspaceSystem::add(std::vector<double> a, Sense sense, double b)
{
    if (static_cast<int>(a.size()) != dim_) {
        throw DimensionError("constraint row has " + std::to_string(a.size()) + " coefficients, expected " +
                             std::to_string(dim_));
    }
    for (double v : a) {
        if (!std::isfinite(v)) throw ParameterError("non-finite constraint coefficient");
    }
    if (!std::isfinite(b)) throw ParameterError("non-finite constraint bound");
    rows_.push_back({std::move(a), sense, b});
    return *this;
}

HalfspaceSystem& HalfspaceSystem::add_eq(const std::vector<double>& a, double b)
{
    add(a, Sense::le, b);
    add(a, Sense::ge, b);
    return *this;
}

HalfspaceSystem& HalfspaceSystem::add_nonnegativity()
{
    for (int i = 0; i < dim_; ++i) {
        std::vector<double> a(dim_, 0.0);
        a[i] = 1.0;
        add_ge(std::move(a), 0.0);
    }
    return *this;
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> HalfspaceSystem::as_le() const
{
    Eigen::MatrixXd A(rows_.size(), dim_);
    Eigen::VectorXd b(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const double s = rows_[i].sense == Sense::le ? 1.0 : -1.0;
        for (int j = 0; j < dim_; ++j) {
            A(i, j) = s * rows_[i].a[j];
        }
        b(i) = s * rows_[i].b;
    }
    return {A, b};
}

bool HalfspaceSystem::satisfies(std::span<const double> x, double tol) const
{
    if (static_cast<int>(x.size()) != dim_) {
        throw DimensionError("point dimension mismatch");
    }
    for (const auto& r : rows_) {
        double lhs = 0.0;
        double norm = 0.0;
        for (int j = 0; j < dim_; ++j) {
            lhs += r.a[j] * x[j];
            norm += r.a[j] * r.a[j];
        }
        norm = std::sqrt(norm);
        const double slack = (r.sense == Sense::le ? r.b - lhs : lhs - r.b);
        if (slack < -tol * std::max(norm, 1.0)) return false;
    }
    return true;
}

bool HalfspaceSystem::feasible() const
{
    bool infeasible = false;
    auto rows = normalized_rows(*this, infeasible);
    return !infeasible && lp_feasible(rows, dim_);
}

Polygon2::Polygon2(std::vector<Point2> pts) : v_(convex_hull(std::move(pts))) {}

std::vector<Point2> convex_hull(std::vector<Point2> pts)
{
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
        return a.r1 < b.r1 || (a.r1 == b.r1 && a.r2 < b.r2);
    });
    std::vector<Point2> uniq;
    for (const auto& p : pts) {
        bool dup = false;
        // Sorted by r1, so only a short tail can be within tolerance.
        for (auto it = uniq.rbegin(); it != uniq.rend() && p.r1 - it->r1 <= kGeomTol; ++it) {
            if (dist(p, *it) <= kGeomTol) {
                dup = true;
                break;
            }
        }
        if (!dup) uniq.push_back(p);
    }
    if (uniq.size() <= 2) {
        return uniq;
    }

    std::vector<Point2> hull(2 * uniq.size());
    std::size_t k = 0;
    for (const auto& p : uniq) {
        while (k >= 2 && drop_middle(hull[k - 2], hull[k - 1], p)) --k;
        hull[k++] = p;
    }
    for (std::size_t i = uniq.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && drop_middle(hull[k - 2], hull[k - 1], uniq[i])) --k;
        hull[k++] = uniq[i];
    }
    hull.resize(k - 1);

    // The chain endpoints are never tested as middles; sweep the closed ring
    // once more so a nearly collinear extreme point cannot survive.
    for (bool changed = true; changed && hull.size() > 3;) {
        changed = false;
        for (std::size_t i = 0; i < hull.size(); ++i) {
            const std::size_t n = hull.size();
            if (drop_middle(hull[(i + n - 1) % n], hull[i], hull[(i + 1) % n])) {
                hull.erase(hull.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    return hull;
}

Polygon2 vertices_2d(const HalfspaceSystem& sys)
{
    if (sys.dimension() != 2) {
        throw DimensionError("vertices_2d requires a 2-D system, got d=" + std::to_string(sys.dimension()));
    }
    bool infeasible = false;
    const auto rows = normalized_rows(sys, infeasible);
    if (infeasible) return {};

    auto feasible_pt = [&](const Eigen::Vector2d& x) {
        return std::all_of(rows.begin(), rows.end(),
                           [&](const NormRow& r) { return r.a.dot(x) <= r.b + kGeomTol; });
    };

    std::vector<Point2> pts;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            const double det = rows[i].a(0) * rows[j].a(1) - rows[i].a(1) * rows[j].a(0);
            if (std::abs(det) < kParallelTol) continue;
            Eigen::Vector2d x;
            x(0) = (rows[i].b * rows[j].a(1) - rows[i].a(1) * rows[j].b) / det;
            x(1) = (rows[i].a(0) * rows[j].b - rows[i].b * rows[j].a(0)) / det;
            if (feasible_pt(x)) pts.push_back({x(0), x(1)});
        }
    }
    return Polygon2(std::move(pts));
}

std::vector<std::vector<double>> vertices_nd(const HalfspaceSystem& sys)
{
    const int d = sys.dimension();
    bool infeasible = false;
    const auto rows = normalized_rows(sys, infeasible);
    std::vector<std::vector<double>> out;
    if (infeasible || static_cast<int>(rows.size()) < d) return out;

    std::vector<int> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    const int m = static_cast<int>(rows.size());
    Eigen::MatrixXd M(d, d);
    Eigen::VectorXd rhs(d);
    while (true) {
        for (int k = 0; k < d; ++k) {
            M.row(k) = rows[idx[k]].a.transpose();
            rhs(k) = rows[idx[k]].b;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        lu.setThreshold(1e-10);
        if (lu.rank() == d) {
            const Eigen::VectorXd x = lu.solve(rhs);
            const bool ok = std::all_of(rows.begin(), rows.end(),
                                        [&](const NormRow& r) { return r.a.dot(x) <= r.b + kGeomTol; });
            if (ok) {
                const bool dup = std::any_of(out.begin(), out.end(), [&](const std::vector<double>& v) {
                    return (Eigen::Map<const Eigen::VectorXd>(v.data(), d) - x).norm() <= kGeomTol;
                });
                if (!dup) out.emplace_back(x.data(), x.data() + d);
            }
        }
        // next combination
        int k = d - 1;
        while (k >= 0 && idx[k] == m - d + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

HalfspaceSystem remove_redundant(const HalfspaceSystem& sys)
{
    const int d = sys.dimension();
    bool infeasible = false;
    auto rows = normalized_rows(sys, infeasible);
    if (infeasible) return infeasible_system(d);

    // Parallel rows with the same normal: keep the tightest bound.
    std::vector<NormRow> uniq;
    for (const auto& r : rows) {
        auto it = std::find_if(uniq.begin(), uniq.end(),
                               [&](const NormRow& u) { return (u.a - r.a).norm() < kParallelTol * 1e3; });
        if (it == uniq.end()) {
            uniq.push_back(r);
        } else {
            it->b = std::min(it->b, r.b);
        }
    }
    if (!lp_feasible(uniq, d)) return infeasible_system(d);

    // A row is redundant when the others already bound its direction.
    std::vector<bool> keep(uniq.size(), true);
    for (std::size_t i = 0; i < uniq.size(); ++i) {
        std::vector<const NormRow*> others;
        for (std::size_t j = 0; j < uniq.size(); ++j) {
            if (j != i && keep[j]) others.push_back(&uniq[j]);
        }
        if (others.empty()) continue;
        Eigen::MatrixXd A(others.size(), d);
        Eigen::VectorXd b(others.size());
        for (std::size_t k = 0; k < others.size(); ++k) {
            A.row(k) = others[k]->a.transpose();
            b(k) = others[k]->b;
        }
        const auto res = lp::maximize(uniq[i].a, A, b);
        if (res.status == lp::Status::optimal && res.value <= uniq[i].b + kGeomTol) {
            keep[i] = false;
        }
    }
    std::vector<NormRow> kept;
    for (std::size_t i = 0; i < uniq.size(); ++i) {
        if (keep[i]) kept.push_back(uniq[i]);
    }
    return from_rows(d, kept);
}

HalfspaceSystem project_fm(const HalfspaceSystem& sys, std::span<const int> keep)
{
    const int d = sys.dimension();
    std::vector<bool> kept(d, false);
    for (int k : keep) {
        if (k < 0 || k >= d || kept[k]) {
            throw DimensionError("projection index out of range or repeated");
        }
        kept[k] = true;
    }
    const int out_dim = static_cast<int>(keep.size());
    if (!sys.feasible()) return infeasible_system(out_dim);

    HalfspaceSystem cur = remove_redundant(sys);
    for (int var = 0; var < d; ++var) {
        if (kept[var]) continue;
        auto [A, b] = cur.as_le();
        std::vector<int> pos, neg, zero;
        for (Eigen::Index i = 0; i < A.rows(); ++i) {
            if (A(i, var) > kParallelTol) pos.push_back(static_cast<int>(i));
            else if (A(i, var) < -kParallelTol) neg.push_back(static_cast<int>(i));
            else zero.push_back(static_cast<int>(i));
        }
        HalfspaceSystem next(d);
        auto push = [&](const Eigen::RowVectorXd& a, double rhs) {
            std::vector<double> coeffs(a.data(), a.data() + d);
            coeffs[var] = 0.0;
            next.add_le(std::move(coeffs), rhs);
        };
        for (int z : zero) push(A.row(z), b(z));
        for (int p : pos) {
            for (int n : neg) {
                const double cp = A(p, var);
                const double cn = -A(n, var);
                push(cn * A.row(p) + cp * A.row(n), cn * b(p) + cp * b(n));
            }
        }
        if (next.size() == 0) {
            cur = next;
            continue;
        }
        cur = remove_redundant(next);
    }

    HalfspaceSystem out(out_dim);
    for (const auto& r : cur.rows()) {
        std::vector<double> a(out_dim);
        bool nonzero = false;
        for (int k = 0; k < out_dim; ++k) {
            a[k] = r.a[keep[k]];
            nonzero = nonzero || std::abs(a[k]) > kParallelTol;
        }
        if (!nonzero) {
            const double rhs = r.sense == Sense::le ? r.b : -r.b;
            if (rhs < -kGeomTol) return infeasible_system(out_dim);
            continue;
        }
        out.add(std::move(a), r.sense, r.b);
    }
    return out;
}

Polygon2 hull_union(std::span<const Polygon2> polys)
{
    std::vector<Point2> pts;
    for (const auto& p : polys) {
        pts.insert(pts.end(), p.vertices().begin(), p.vertices().end());
    }
    return Polygon2(std::move(pts));
}

bool contains(const Polygon2& poly, Point2 p, double tol)
{
    const auto& v = poly.vertices();
    if (v.empty()) return false;
    if (v.size() == 1) return dist(v[0], p) <= tol;
    if (v.size() == 2) {
        const double len = dist(v[0], v[1]);
        const double t = ((p.r1 - v[0].r1) * (v[1].r1 - v[0].r1) + (p.r2 - v[0].r2) * (v[1].r2 - v[0].r2)) /
                         (len * len);
        const double tc = std::clamp(t, 0.0, 1.0);
        const Point2 q{v[0].r1 + tc * (v[1].r1 - v[0].r1), v[0].r2 + tc * (v[1].r2 - v[0].r2)};
        return dist(p, q) <= tol;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2 a = v[i];
        const Point2 b = v[(i + 1) % v.size()];
        if (cross(a, b, p) / dist(a, b) < -tol) return false;
    }
    return true;
}

bool contains(const Polygon2& outer, const Polygon2& inner, double tol)
{
    return std::all_of(inner.vertices().begin(), inner.vertices().end(),
                       [&](Point2 p) { return contains(outer, p, tol); });
}

std::optional<double> max_linear(const Polygon2& poly, double w1, double w2)
{
    if (poly.empty()) return std::nullopt;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : poly.vertices()) {
        best = std::max(best, w1 * p.r1 + w2 * p.r2);
    }
    return best;
}

bool same_vertices(const Polygon2& a, const Polygon2& b, double tol)
{
    auto covered = [tol](const Polygon2& x, const Polygon2& y) {
        return std::all_of(x.vertices().begin(), x.vertices().end(), [&](Point2 p) {
            return std::any_of(y.vertices().begin(), y.vertices().end(),
                               [&](Point2 q) { return dist(p, q) <= tol; });
        });
    };
    return covered(a, b) && covered(b, a);
}

}  // namespace wtc2
