#include <array>
#include <random>

#include <gtest/gtest.h>

#include "wtc2/errors.hpp"
#include "wtc2/lp.hpp"
#include "wtc2/polytope.hpp"

using namespace wtc2;

namespace {

HalfspaceSystem unit_square()
{
    HalfspaceSystem s(2);
    s.add_le({1, 0}, 1.0).add_le({0, 1}, 1.0).add_nonnegativity();
    return s;
}

Polygon2 square_at(double x0, double y0)
{
    return Polygon2({{x0, y0}, {x0 + 1, y0}, {x0 + 1, y0 + 1}, {x0, y0 + 1}});
}

}  // namespace

TEST(Lp, SolvesSmallProblems)
{
    Eigen::MatrixXd A(3, 2);
    A << 1, 1, 1, 0, 0, 1;
    Eigen::VectorXd b(3);
    b << 4, 3, 2;
    const auto r = lp::maximize(Eigen::Vector2d(1, 2), A, b);
    ASSERT_EQ(r.status, lp::Status::optimal);
    EXPECT_NEAR(r.value, 6.0, 1e-12);
}

TEST(Lp, ReportsInfeasibleAndUnbounded)
{
    Eigen::MatrixXd A(2, 1);
    A << 1, -1;
    Eigen::VectorXd b(2);
    b << -1, -1;  // x <= -1 and x >= 1
    EXPECT_EQ(lp::maximize(Eigen::VectorXd::Ones(1), A, b).status, lp::Status::infeasible);
    Eigen::MatrixXd B(1, 1);
    B << -1;
    EXPECT_EQ(lp::maximize(Eigen::VectorXd::Ones(1), B, Eigen::VectorXd::Zero(1)).status, lp::Status::unbounded);
}

TEST(HalfspaceSystem, RejectsBadRows)
{
    HalfspaceSystem s(2);
    EXPECT_THROW(s.add_le({1, 0, 0}, 1.0), DimensionError);
    EXPECT_THROW(s.add_le({std::nan(""), 0}, 1.0), ParameterError);
    EXPECT_THROW(HalfspaceSystem(0), DimensionError);
    EXPECT_THROW(HalfspaceSystem(7), DimensionError);
}

TEST(Vertices2d, UnitSquare)
{
    EXPECT_TRUE(same_vertices(vertices_2d(unit_square()), square_at(0, 0)));
}

TEST(Vertices2d, PentagonFromHandIntersection)
{
    HalfspaceSystem s(2);
    s.add_le({1, 0}, 0.5).add_le({0, 1}, 3.3291).add_le({1, 1}, 2.0366).add_nonnegativity();
    const Polygon2 p = vertices_2d(s);
    const Polygon2 expect({{0, 0}, {0.5, 0}, {0.5, 1.5366}, {0, 2.0366}});
    EXPECT_TRUE(same_vertices(p, expect, 1e-12));
    // Brute-force membership on a grid.
    for (int i = 0; i <= 60; ++i)
        for (int j = 0; j <= 60; ++j) {
            const Point2 q{0.6 * i / 60, 2.2 * j / 60};
            const std::array<double, 2> x{q.r1, q.r2};
            EXPECT_EQ(contains(p, q), s.satisfies(x)) << q.r1 << "," << q.r2;
        }
}

TEST(Vertices2d, EmptyAndWrongDimension)
{
    HalfspaceSystem s(2);
    s.add_le({1, 0}, -1.0).add_nonnegativity();
    EXPECT_TRUE(vertices_2d(s).empty());
    EXPECT_THROW(vertices_2d(HalfspaceSystem(3)), DimensionError);
}

TEST(ProjectFm, TriangleOntoX)
{
    HalfspaceSystem s(2);
    s.add_le({1, 1}, 1.0).add_nonnegativity();
    const int keep[] = {0};
    const HalfspaceSystem p = project_fm(s, keep);
    ASSERT_EQ(p.dimension(), 1);
    for (double x : {0.0, 0.5, 1.0}) EXPECT_TRUE(p.satisfies(std::array<double, 1>{x}));
    for (double x : {-0.01, 1.01}) EXPECT_FALSE(p.satisfies(std::array<double, 1>{x}));
    EXPECT_EQ(p.size(), 2u);
}

TEST(ProjectFm, KeepAllIsIdentityUpToRedundancy)
{
    HalfspaceSystem s = unit_square();
    s.add_le({1, 1}, 5.0);  // redundant
    const int keep[] = {0, 1};
    const HalfspaceSystem p = project_fm(s, keep);
    EXPECT_EQ(p.size(), 4u);
    EXPECT_TRUE(same_vertices(vertices_2d(p), square_at(0, 0)));
}

TEST(ProjectFm, InfeasibleStaysInfeasible)
{
    HalfspaceSystem s(3);
    s.add_le({1, 1, 1}, -1.0).add_nonnegativity();
    const int keep[] = {0};
    const HalfspaceSystem p = project_fm(s, keep);
    EXPECT_FALSE(p.feasible());
}

// Property: random bounded 3-D systems project onto the same polygon as the
// hull of their projected vertices.
TEST(ProjectFm, MatchesVertexShadow)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> c(-1.0, 1.0), rhs(0.5, 2.0);
    for (int k = 0; k < 30; ++k) {
        HalfspaceSystem s(3);
        for (int r = 0; r < 5; ++r) s.add_le({c(rng), c(rng), c(rng)}, rhs(rng));
        for (int d = 0; d < 3; ++d) {
            std::vector<double> e(3, 0.0);
            e[d] = 1.0;
            s.add_le(e, 3.0);
            e[d] = -1.0;
            s.add_le(e, 3.0);
        }
        std::vector<Point2> shadow;
        for (const auto& v : vertices_nd(s)) shadow.push_back({v[0], v[1]});
        const int keep[] = {0, 1};
        EXPECT_TRUE(same_vertices(vertices_2d(project_fm(s, keep)), Polygon2(shadow), 1e-7)) << "system " << k;
    }
}

TEST(HullUnion, Cases)
{
    const Polygon2 sq = square_at(0, 0);
    const std::array<Polygon2, 1> one{sq};
    EXPECT_TRUE(same_vertices(hull_union(one), sq));
    EXPECT_TRUE(hull_union(std::span<const Polygon2>{}).empty());
    const std::array<Polygon2, 2> empties{};
    EXPECT_TRUE(hull_union(empties).empty());

    const std::array<Polygon2, 2> two{sq, square_at(0.5, 0)};
    const Polygon2 h = hull_union(two);
    EXPECT_TRUE(same_vertices(h, Polygon2({{0, 0}, {1.5, 0}, {1.5, 1}, {0, 1}})));
    for (int i = 0; i <= 100; ++i)
        for (int j = 0; j <= 100; ++j) {
            const Point2 q{-0.25 + 2.0 * i / 100, -0.25 + 1.5 * j / 100};
            const bool inside = q.r1 >= 0 && q.r1 <= 1.5 && q.r2 >= 0 && q.r2 <= 1;
            EXPECT_EQ(contains(h, q), inside);
        }
}

TEST(ConvexHull, KeepsCornerAfterRoundOff)
{
    // A vertex with a tiny negative abscissa sorts before the origin.
    const std::vector<Point2> pts{{-8.8e-17, 0.07}, {0, 0}, {0.00045, 0}, {0.16, 0}, {0, 0.16}};
    const Polygon2 p(pts);
    EXPECT_TRUE(contains(p, Point2{0, 0}, 1e-12));
    EXPECT_EQ(p.vertices().size(), 3u);
}

TEST(Contains, PointsAndTolerance)
{
    const Polygon2 sq = square_at(0, 0);
    EXPECT_TRUE(contains(sq, Point2{0.25, 0.25}));
    EXPECT_TRUE(contains(sq, Point2{1 + 1e-12, 0}, 1e-9));
    EXPECT_FALSE(contains(sq, Point2{2, 0}));
    EXPECT_FALSE(contains(Polygon2{}, Point2{0, 0}));
    const Polygon2 seg({{0, 0}, {1, 1}});
    EXPECT_TRUE(contains(seg, Point2{0.5, 0.5}));
    EXPECT_FALSE(contains(seg, Point2{0.5, 0.4}));
    EXPECT_TRUE(contains(sq, Polygon2{}));
    EXPECT_TRUE(contains(sq, Polygon2({{0.2, 0.2}, {0.8, 0.3}, {0.5, 0.9}})));
    EXPECT_FALSE(contains(sq, square_at(0.5, 0)));
}

TEST(MaxLinear, Cases)
{
    const Polygon2 sq = square_at(0, 0);
    EXPECT_DOUBLE_EQ(*max_linear(sq, 1, 1), 2.0);
    EXPECT_DOUBLE_EQ(*max_linear(sq, 1, 0), 1.0);
    EXPECT_DOUBLE_EQ(*max_linear(Polygon2({{0, 0}}), 1, 1), 0.0);
    EXPECT_FALSE(max_linear(Polygon2{}, 1, 1).has_value());
}

// Property: hull vertices are distinct, counterclockwise and convex.
TEST(ConvexHull, RandomCloudsAreConvex)
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        std::vector<Point2> pts;
        for (int i = 0; i < 40; ++i) pts.push_back({u(rng), u(rng)});
        const auto h = convex_hull(pts);
        ASSERT_GE(h.size(), 3u);
        for (std::size_t i = 0; i < h.size(); ++i) {
            const Point2 a = h[i], b = h[(i + 1) % h.size()], c = h[(i + 2) % h.size()];
            EXPECT_GT((b.r1 - a.r1) * (c.r2 - a.r2) - (b.r2 - a.r2) * (c.r1 - a.r1), 0.0);
        }
        const Polygon2 poly(pts);
        for (const auto& p : pts) EXPECT_TRUE(contains(poly, p));
    }
}
