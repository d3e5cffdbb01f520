#include "fbmono/error.hpp"
#include "fbmono/monotonicity.hpp"
#include "fbmono/shapes.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace fbmono;

namespace {
constexpr double kPi = std::numbers::pi;

struct Fixture {
    TriangleMesh mesh;
    MeanCurvatureField H;
    BoundaryField B;
    explicit Fixture(TriangleMesh m) : mesh(std::move(m)), H(mean_curvature(mesh)), B(conormal(mesh)) {}
};
}  // namespace

TEST(RadiusGrid, GeometricAndInclusive)
{
    const auto g = radius_grid(0.2, 4.0, 24);
    ASSERT_EQ(g.size(), 24u);
    EXPECT_DOUBLE_EQ(g.front(), 0.2);
    EXPECT_NEAR(g.back(), 4.0, 1e-14);
    for (std::size_t i = 2; i < g.size(); ++i) EXPECT_NEAR(g[i] / g[i - 1], g[1] / g[0], 1e-12);
    EXPECT_THROW(radius_grid(0.0, 1.0, 5), InvalidArgument);
    EXPECT_THROW(radius_grid(1.0, 0.5, 5), InvalidArgument);
    EXPECT_THROW(radius_grid(0.1, 1.0, 1), InvalidArgument);
}

TEST(Profile, RejectsBadRadii)
{
    const Fixture f(make_flat_disk(24));
    EXPECT_THROW(g_profile(f.mesh, f.H, f.B, {}, {0.5, 0.4}), InvalidArgument);
    EXPECT_THROW(g_profile(f.mesh, f.H, f.B, {}, {-0.1, 0.4}), InvalidArgument);
}

TEST(Profile, DiskAtOriginIsFlatAndConsistent)
{
    const Fixture f(make_flat_disk(96));
    const double tol = 10.0 * f.mesh.median_edge_length();
    const RadialProfile p = g_profile(f.mesh, f.H, f.B, {0, 0, 0}, radius_grid(0.2, 4.0, 24));
    ASSERT_EQ(p.records.size(), 24u);
    EXPECT_EQ(p.records.front().annulus_lhs, 0.0);
    EXPECT_EQ(p.records.front().delta_rhs, 0.0);
    const MonotonicityVerdict v = monotonicity_check(p, tol);
    EXPECT_TRUE(v.pass());
    EXPECT_LT(v.max_identity_residual, 1e-3);
}

TEST(Profile, MonotoneOnCapsAtEveryCenterKind)
{
    for (double r : {0.5, 2.0}) {
        const Fixture f(make_spherical_cap(r, 48));
        const double tol = 10.0 * f.mesh.median_edge_length();
        const double rho = spherical_cap_boundary_radius(r);
        const Vec3 boundary{rho, 0.0, std::sqrt(1.0 - rho * rho)};
        for (const Vec3& c : {Vec3{0, 0, 0}, Vec3{0, 0, std::sqrt(1 + r * r) - r}, boundary, 1.1 * boundary}) {
            const MonotonicityVerdict v =
                monotonicity_check(g_profile(f.mesh, f.H, f.B, c, radius_grid(0.2, 4.0, 12)), tol);
            EXPECT_TRUE(v.pass()) << "r = " << r << " c = " << c.x << "," << c.z;
        }
    }
}

TEST(Profile, IdentityResidualShrinksWithRefinement)
{
    const auto radii = radius_grid(0.2, 4.0, 12);
    const Fixture coarse(make_spherical_cap(1.0, 48));
    const Fixture fine(make_spherical_cap(1.0, 96));
    const Vec3 apex{0, 0, std::sqrt(2.0) - 1.0};
    const double a = monotonicity_check(g_profile(coarse.mesh, coarse.H, coarse.B, apex, radii), 1.0)
                         .max_identity_residual;
    const double b =
        monotonicity_check(g_profile(fine.mesh, fine.H, fine.B, apex, radii), 1.0).max_identity_residual;
    EXPECT_LT(b, 0.65 * a);
}

TEST(Density, ConeDensityOnFlatDisk)
{
    const TriangleMesh m = make_flat_disk(48);
    EXPECT_NEAR(cone_density(m, {0, 0, 0}), 1.0, 1e-12);
    EXPECT_NEAR(cone_density(m, {0.31, 0.17, 0}), 1.0, 1e-12);
    EXPECT_NEAR(cone_density(m, m.vertex(m.boundary_loops()[0][5])), 0.5, 1e-12);
    EXPECT_EQ(cone_density(m, {0, 0, 0.5}), 0.0);
    EXPECT_EQ(cone_density(m, {3, 0, 0}), 0.0);
}

TEST(Density, ConeDensityOnCurvedBoundaryIsOneHalf)
{
    const TriangleMesh m = make_spherical_cap(0.5, 48);
    for (int v : m.boundary_loops()[0]) EXPECT_NEAR(cone_density(m, m.vertex(v)), 0.5, 1e-4);
}

TEST(Density, TwoSheetsThroughOriginGiveTwo)
{
    const TriangleMesh m = make_two_disks(48, kPi / 2);
    EXPECT_NEAR(cone_density(m, {0, 0, 0}), 2.0, 1e-12);
    EXPECT_NEAR(tilde_density(m, {0, 0, 0}).value, 2.0, 1e-12);
}

TEST(Density, TildeDensityAddsReflectedPoint)
{
    const TriangleMesh m = make_flat_disk(48);
    // on the boundary the point is its own reflection
    const Vec3 b = m.vertex(m.boundary_loops()[0][0]);
    EXPECT_NEAR(tilde_density(m, b).value, 1.0, 1e-9);
    // the reflection of an interior point lies outside the unit ball
    const DensityEstimate d = tilde_density(m, {0.3, 0, 0});
    EXPECT_NEAR(d.value, 1.0, 1e-12);
    EXPECT_TRUE(d.reflected_samples.empty());
}

TEST(Density, AreaRatioNearOneInsideFlatDisk)
{
    const TriangleMesh m = make_flat_disk(48);
    EXPECT_NEAR(density_ratio(m, {0.1, 0.1, 0}, 0.2, false), 1.0, 1e-5);
}

TEST(Density, DistanceToMesh)
{
    const TriangleMesh m = make_flat_disk(24);
    EXPECT_NEAR(distance_to_mesh(m, {0.1, 0.2, 0.7}), 0.7, 1e-15);
    EXPECT_NEAR(distance_to_mesh(m, {0.0, 0.0, 0.0}), 0.0, 1e-15);
}

TEST(Defect, FlatDiskSeenFromAbove)
{
    // ∫ d² / (ρ² + d²)² over the unit disk is π / (1 + d²)
    const Fixture f(make_flat_disk(96));
    const double d = 0.5;
    const double value = normal_defect_integral(f.mesh, f.H, {0, 0, d}, 0.01);
    EXPECT_NEAR(value, kPi / (1.0 + d * d), 2e-3);
    EXPECT_LT(normal_defect_integral(f.mesh, f.H, {0.2, 0.1, 0.0}, 0.01), 1e-12);
}

TEST(Identity, DiskAtOriginBalances)
{
    const Fixture f(make_flat_disk(96));
    const IntegralIdentity id = integral_identity(f.mesh, f.H, f.B, {0, 0, 0});
    EXPECT_NEAR(id.density, 1.0, 1e-9);
    EXPECT_NEAR(id.boundary_term, 1.0, 1e-3);
    EXPECT_LT(std::abs(id.h2_term), 1e-12);
    EXPECT_LT(std::abs(id.defect), 1e-2);
}

TEST(Identity, CapDefectShrinksWithRefinement)
{
    const Vec3 apex{0, 0, std::sqrt(2.0) - 1.0};
    const Fixture coarse(make_spherical_cap(1.0, 48));
    const Fixture fine(make_spherical_cap(1.0, 96));
    const double a = integral_identity(coarse.mesh, coarse.H, coarse.B, apex).defect;
    const double b = integral_identity(fine.mesh, fine.H, fine.B, apex).defect;
    EXPECT_LT(std::abs(b), std::abs(a));
    EXPECT_LT(std::abs(b), 2e-2);
}

TEST(Identity, IntegralOfSquaredCurvatureOnCap)
{
    // |H| = 2/r on a sphere of radius r, so ∫|H|² = 4 area / r²
    const Fixture f(make_spherical_cap(2.0, 96));
    EXPECT_NEAR(integral_h2(f.mesh, f.H), spherical_cap_area(2.0), 5e-3 * spherical_cap_area(2.0));
    EXPECT_NEAR(boundary_position_flux(f.B, f.mesh), 4.0 * kPi / std::sqrt(5.0), 1e-3 * 4.0 * kPi / std::sqrt(5.0));
}
