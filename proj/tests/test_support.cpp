#include "fbmono/error.hpp"
#include "fbmono/shapes.hpp"
#include "fbmono/support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace fbmono;

TEST(Support, KernelIsOneOnUnitSphere)
{
    const SupportSurface s = SupportSurface::sphere({0, 0, 0}, 1.0, 300);
    for (std::size_t i = 0; i < s.size(); i += 17) {
        for (std::size_t j = 0; j < s.size(); j += 13) {
            if (i == j) continue;
            EXPECT_NEAR(z_kernel(s.points()[i], s.normals()[i], s.points()[j]), 1.0, 1e-12);
        }
    }
    EXPECT_THROW(z_kernel({1, 0, 0}, {1, 0, 0}, {1, 0, 0}), InvalidArgument);
}

TEST(Support, KernelScalesInverselyWithRadius)
{
    const SupportSurface s = SupportSurface::sphere({1, 2, 3}, 2.5, 100);
    const BallCurvatureReport r = ball_curvatures(s);
    EXPECT_NEAR(r.sup_upper, 0.4, 1e-12);
    EXPECT_NEAR(r.inf_lower, 0.4, 1e-12);
}

TEST(Support, SamplesLieOnTheSurface)
{
    const SupportSurface e = SupportSurface::ellipsoid(2.0, 1.0, 0.5, 500);
    for (std::size_t i = 0; i < e.size(); ++i) {
        EXPECT_NEAR(e.level(e.points()[i]), 0.0, 1e-12);
        EXPECT_NEAR(norm(e.normals()[i]), 1.0, 1e-15);
    }
    EXPECT_GT(e.sample_spacing(), 0.0);
}

TEST(Support, EllipsoidCurvatures)
{
    const SupportSurface e = SupportSurface::ellipsoid(2.0, 1.0, 1.0, 100);
    // at the long tip both principal curvatures are a / b² = 2
    EXPECT_NEAR(e.max_principal_curvature({2, 0, 0}), 2.0, 1e-12);
    EXPECT_NEAR(e.curvature_bound(), 2.0, 1e-12);
    // along the circular equator x = 0: curvature 1 in the circle, b / a² = 1/4 across
    EXPECT_NEAR(e.normal_curvature({0, 1, 0}, {0, 0, 1}), 1.0, 1e-12);
    EXPECT_NEAR(e.normal_curvature({0, 1, 0}, {1, 0, 0}), 0.25, 1e-12);
}

TEST(Support, SphereNormalCurvature)
{
    const SupportSurface s = SupportSurface::sphere({0, 0, 0}, 2.0, 10);
    EXPECT_NEAR(s.normal_curvature({0, 0, 2}, {1, 0, 0}), 0.5, 1e-15);
}

TEST(Support, PointCloudValidation)
{
    EXPECT_THROW(SupportSurface::point_cloud({{0, 0, 0}}, {{0, 0, 1}}), InvalidArgument);
    EXPECT_THROW(SupportSurface::point_cloud({{0, 0, 0}, {1, 0, 0}}, {{0, 0, 1}}), InvalidArgument);
    EXPECT_THROW(SupportSurface::point_cloud({{0, 0, 0}, {1, 0, 0}}, {{0, 0, 1}, {0, 0, 0}}), InvalidArgument);
    const SupportSurface p = SupportSurface::point_cloud({{1, 0, 0}, {-1, 0, 0}}, {{2, 0, 0}, {-1, 0, 0}});
    EXPECT_FALSE(p.analytic());
    EXPECT_NEAR(norm(p.normals()[0]), 1.0, 1e-15);
    EXPECT_THROW(p.curvature_bound(), InvalidArgument);
}

TEST(Support, SampledSupremumMatchesCurvatureOnEllipsoid)
{
    const SupportSurface e = SupportSurface::ellipsoid(2.0, 1.0, 1.0, 2000);
    EXPECT_NEAR(ball_curvatures(e).sup_upper, 2.0, 0.02);
}

TEST(Support, UnitBallInequalityIsSharpOnCap)
{
    const TriangleMesh m = make_spherical_cap(1.0, 96);
    const MeanCurvatureField H = mean_curvature(m);
    const BoundaryField B = conormal(m);
    const SupportSurface ball = SupportSurface::sphere({0, 0, 0}, 1.0, 200);
    const SupportInequality s = support_inequality_check(m, H, B, ball, 1e-2);
    EXPECT_TRUE(s.ball_curvature.pass);
    EXPECT_NEAR(s.quarter_h2 + s.kappa_integral, 2.0 * std::numbers::pi, 0.01 * 2.0 * std::numbers::pi);
    EXPECT_NEAR(s.kappa_integral, s.boundary_length, 1e-9);
    ASSERT_TRUE(s.convex_bound.has_value());
    EXPECT_NEAR(s.curvature_bound, 1.0, 1e-12);
}

TEST(Support, EllipsoidSupportedDiskIsStrict)
{
    const TriangleMesh m = make_elliptic_disk(2.0, 1.0, 96);
    const BoundaryField B = conormal(m);
    const SupportSurface e = SupportSurface::ellipsoid(2.0, 1.0, 1.0, 500);
    EXPECT_TRUE(support_admissibility(m, B, e).admissible());
    const SupportInequality s = support_inequality_check(m, mean_curvature(m), B, e, 1e-3);
    EXPECT_GT(s.quarter_h2 + s.kappa_integral - 2.0 * std::numbers::pi, 0.0);
}

TEST(Support, BoundaryIdentityOnCap)
{
    const TriangleMesh m = make_spherical_cap(1.0, 96);
    const MeanCurvatureField H = mean_curvature(m);
    const BoundaryField B = conormal(m);
    const SupportSurface ball = SupportSurface::sphere({0, 0, 0}, 1.0, 200);
    const CurvatureIdentity id = boundary_curvature_identity(m, H, B, ball, m.vertex(B.vertices[0]));
    EXPECT_LT(id.residual, 5e-2);
    EXPECT_THROW(boundary_curvature_identity(m, H, B, ball, {0, 0, 0}), InvalidArgument);
}
