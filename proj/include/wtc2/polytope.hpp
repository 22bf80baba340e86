#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace wtc2 {

/// Tolerance for vertex de-duplication, feasibility and containment tests.
inline constexpr double kGeomTol = 1e-9;

enum class Sense { le, ge };

struct Halfspace {
    std::vector<double> a;
    Sense sense = Sense::le;
    double b = 0.0;
};

/// Intersection of halfspaces in R^d (1 <= d <= 6).
class HalfspaceSystem {
public:
    explicit HalfspaceSystem(int dimension);

    int dimension() const { return dim_; }
    const std::vector<Halfspace>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }

    HalfspaceSystem& add(std::vector<double> a, Sense sense, double b);
    HalfspaceSystem& add_le(std::vector<double> a, double b) { return add(std::move(a), Sense::le, b); }
    HalfspaceSystem& add_ge(std::vector<double> a, double b) { return add(std::move(a), Sense::ge, b); }
    /// a.x == b as two opposite inequalities.
    HalfspaceSystem& add_eq(const std::vector<double>& a, double b);
    /// x_i >= 0 for every coordinate.
    HalfspaceSystem& add_nonnegativity();

    /// Every row in "<=" form, as (A, b).
    std::pair<Eigen::MatrixXd, Eigen::VectorXd> as_le() const;

    bool satisfies(std::span<const double> x, double tol = kGeomTol) const;
    bool feasible() const;

private:
    int dim_;
    std::vector<Halfspace> rows_;
};

struct Point2 {
    double r1 = 0.0;
    double r2 = 0.0;
};

/// Convex polygon in the (R1, R2) plane, vertices counterclockwise. Points and
/// segments are represented by one or two vertices; no vertices means empty.
class Polygon2 {
public:
    Polygon2() = default;
    /// Builds the convex hull of the given points.
    explicit Polygon2(std::vector<Point2> pts);

    const std::vector<Point2>& vertices() const { return v_; }
    bool empty() const { return v_.empty(); }

private:
    std::vector<Point2> v_;
};

/// Monotone-chain convex hull, counterclockwise, duplicates within kGeomTol merged.
std::vector<Point2> convex_hull(std::vector<Point2> pts);

/// Exact vertex enumeration of a 2-D system (pairwise intersections filtered
/// by feasibility). Throws DimensionError when d != 2.
Polygon2 vertices_2d(const HalfspaceSystem& sys);

/// Vertices of a bounded system of small dimension by enumerating every
/// d-subset of rows. Returns an empty list for infeasible systems.
std::vector<std::vector<double>> vertices_nd(const HalfspaceSystem& sys);

/// Fourier-Motzkin elimination of every coordinate not listed in `keep`,
/// followed by redundant-row removal. The result lives in R^|keep| with
/// coordinates ordered as in `keep`. Infeasible input yields the single row
/// 0 <= -1.
HalfspaceSystem project_fm(const HalfspaceSystem& sys, std::span<const int> keep);

/// Drops duplicate, dominated and LP-redundant rows.
HalfspaceSystem remove_redundant(const HalfspaceSystem& sys);

/// Convex hull of the union (time sharing between the regions).
Polygon2 hull_union(std::span<const Polygon2> polys);

bool contains(const Polygon2& poly, Point2 p, double tol = kGeomTol);

/// Every vertex of `inner` lies in `outer` (the empty polygon is contained in anything).
bool contains(const Polygon2& outer, const Polygon2& inner, double tol = kGeomTol);

/// Max of w1 R1 + w2 R2 over the polygon; std::nullopt for an empty polygon.
std::optional<double> max_linear(const Polygon2& poly, double w1, double w2);

/// Vertex sets agree up to `tol` in both directions.
bool same_vertices(const Polygon2& a, const Polygon2& b, double tol = kGeomTol);

}  // namespace wtc2
