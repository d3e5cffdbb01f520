#include "fbmono/clip.hpp"
#include "fbmono/shapes.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace fbmono;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Clip, PointTriangleDistanceRegions)
{
    const Vec3 a{0, 0, 0}, b{1, 0, 0}, c{0, 1, 0};
    EXPECT_NEAR(point_triangle_distance({0.2, 0.2, 1.0}, a, b, c), 1.0, 1e-15);
    EXPECT_NEAR(point_triangle_distance({2.0, 0.0, 0.0}, a, b, c), 1.0, 1e-15);
    EXPECT_NEAR(point_triangle_distance({-1.0, -1.0, 0.0}, a, b, c), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(point_triangle_distance({1.0, 1.0, 0.0}, a, b, c), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(point_triangle_distance({0.5, -2.0, 0.0}, a, b, c), 2.0, 1e-15);
    EXPECT_EQ(point_triangle_distance({0.1, 0.1, 0.0}, a, b, c), 0.0);
}

TEST(Clip, FlatBallMassIsDiskArea)
{
    const TriangleMesh m = make_flat_disk(48);
    for (double r : {0.05, 0.3, 0.77}) {
        EXPECT_NEAR(ball_mass(m, {0, 0, 0}, r), kPi * r * r, 1e-5 * kPi * r * r) << r;
    }
}

TEST(Clip, OffPlaneCenterGivesSmallerDisk)
{
    const TriangleMesh m = make_flat_disk(48);
    const double expected = kPi * (0.25 - 0.09);
    EXPECT_NEAR(ball_mass(m, {0.1, -0.2, 0.3}, 0.5), expected, 1e-5 * expected);
}

TEST(Clip, LargeAndDistantBalls)
{
    const TriangleMesh m = make_spherical_cap(1.0, 24);
    EXPECT_NEAR(ball_mass(m, {0, 0, 0}, 10.0), m.total_area(), 1e-13);
    EXPECT_EQ(ball_mass(m, {0, 0, 5}, 0.5), 0.0);
}

TEST(Clip, SphericalBallAroundSurfacePointHasAreaPiRhoSquared)
{
    // a ball of radius ρ centred on a sphere cuts out a cap of area π ρ²
    const TriangleMesh m = make_spherical_cap(1.0, 96);
    const Vec3 apex{0, 0, std::sqrt(2.0) - 1.0};
    for (double rho : {0.2, 0.4}) {
        EXPECT_NEAR(ball_mass(m, apex, rho), kPi * rho * rho, 1e-3 * kPi * rho * rho) << rho;
    }
}

TEST(Clip, ShellIntegralIsDifferenceOfBalls)
{
    const TriangleMesh m = make_perturbed_cap(1.0, 48, 0.2, 3, 0.1);
    const Vec3 c{0.1, 0.2, 0.3};
    const auto shell = integrate_region<1>(m, Region::shell(c, 0.3, 0.6),
                                           [](const SurfacePoint&) { return std::array<double, 1>{1.0}; });
    EXPECT_NEAR(shell[0], ball_mass(m, c, 0.6) - ball_mass(m, c, 0.3), 1e-9);
    const auto outside = integrate_region<1>(m, Region::exterior(c, 0.6),
                                             [](const SurfacePoint&) { return std::array<double, 1>{1.0}; });
    EXPECT_NEAR(outside[0] + ball_mass(m, c, 0.6), m.total_area(), 1e-9);
}

TEST(Clip, IntegratesLinearFunctionsOverClippedFaces)
{
    // ∫ x² over the flat disk of radius r is π r⁴ / 4
    const TriangleMesh m = make_flat_disk(48);
    const double r = 0.6;
    const auto v = integrate_region<2>(m, Region::ball({0, 0, 0}, r), [](const SurfacePoint& p) {
        return std::array<double, 2>{p.x.x * p.x.x, p.x.y};
    });
    EXPECT_NEAR(v[0], kPi * std::pow(r, 4) / 4.0, 1e-5);
    EXPECT_NEAR(v[1], 0.0, 1e-9);
}

TEST(Clip, BallMassIsMonotoneInRadius)
{
    const TriangleMesh m = make_perturbed_cap(0.5, 48, 0.3, 2, 0.0);
    const Vec3 c{0.2, 0.1, 0.4};
    double previous = 0.0;
    for (double r = 0.05; r < 2.5; r *= 1.3) {
        const double mass = ball_mass(m, c, r);
        EXPECT_GE(mass, previous);
        previous = mass;
    }
}
