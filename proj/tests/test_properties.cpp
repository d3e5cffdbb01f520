#include "fbmono/clip.hpp"
#include "fbmono/monotonicity.hpp"
#include "fbmono/operators.hpp"
#include "fbmono/shapes.hpp"
#include "fbmono/tangent_point.hpp"
#include "fbmono/willmore.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace fbmono;

namespace {

constexpr double kPi = std::numbers::pi;

struct CapSample {
    double r;
    int mode;
    double amplitude;
    double phase;
};

CapSample draw_cap(std::mt19937_64& rng, double min_amplitude = 0.0)
{
    std::uniform_real_distribution<double> amp(min_amplitude, 0.3);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
    std::uniform_int_distribution<int> mode(2, 4);
    const double radii[] = {0.5, 1.0, 2.0};
    return {radii[rng() % 3], mode(rng), amp(rng), ph(rng)};
}

Mat3 random_rotation(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    const Vec3 axis = normalized(Vec3{g(rng), g(rng), g(rng)});
    return rotation(axis, std::uniform_real_distribution<double>(0.0, kPi)(rng));
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST(Properties, VertexAreasPartitionTheSurface)
{
    std::mt19937_64 rng(1);
    for (int k = 0; k < 5; ++k) {
        const CapSample s = draw_cap(rng);
        const TriangleMesh m = make_perturbed_cap(s.r, 32, s.amplitude, s.mode, s.phase);
        double sum = 0.0;
        for (double a : vertex_areas(m)) sum += a;
        EXPECT_NEAR(sum, m.total_area(), 1e-12 * m.total_area());
    }
}

TEST(Properties, WillmoreInvariantUnderRotationAboutOrigin)
{
    std::mt19937_64 rng(2);
    for (int k = 0; k < 3; ++k) {
        const CapSample s = draw_cap(rng);
        const TriangleMesh m = make_perturbed_cap(s.r, 48, s.amplitude, s.mode, s.phase);
        const TriangleMesh rm = m.transformed(random_rotation(rng), 1.0, {});
        WillmoreOptions o;
        o.compute_density = false;
        o.compute_equality = false;
        const double w0 = willmore_energy(m, mean_curvature(m), conormal(m), o).willmore;
        const double w1 = willmore_energy(rm, mean_curvature(rm), conormal(rm), o).willmore;
        EXPECT_LT(relative_gap(w0, w1), 1e-10);
    }
}

TEST(Properties, PerturbedCapsSatisfyLiYauAndStayAdmissible)
{
    std::mt19937_64 rng(3);
    for (int k = 0; k < 4; ++k) {
        const CapSample s = draw_cap(rng, 0.15);
        const TriangleMesh m = make_perturbed_cap(s.r, 96, s.amplitude, s.mode, s.phase);
        const BoundaryField B = conormal(m);
        EXPECT_TRUE(free_boundary_admissibility(m, B).admissible());
        const WillmoreReport w = willmore_energy(m, mean_curvature(m), B);
        EXPECT_TRUE(li_yau_check(w, 1e-2).pass) << s.r << ' ' << s.mode << ' ' << s.amplitude;
        EXPECT_GE(w.willmore, 2.0 * kPi - 2e-2);
    }
}

TEST(Properties, ProfileSumIsNondecreasing)
{
    std::mt19937_64 rng(4);
    const CapSample s = draw_cap(rng);
    const TriangleMesh m = make_perturbed_cap(s.r, 64, s.amplitude, s.mode, s.phase);
    const RadialProfile p = g_profile(m, mean_curvature(m), conormal(m), {}, radius_grid(0.2, 4.0, 12));
    const double h = m.median_edge_length();
    EXPECT_TRUE(monotonicity_check(p, 10.0 * h).monotone);
}

TEST(Properties, BallMassIsMonotoneInRadius)
{
    std::mt19937_64 rng(5);
    const TriangleMesh m = make_spherical_cap(1.0, 48);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int k = 0; k < 4; ++k) {
        const Vec3 c{u(rng), u(rng), u(rng)};
        double prev = 0.0;
        for (double r : radius_grid(0.05, 3.0, 10)) {
            const double mass = ball_mass(m, c, r);
            EXPECT_GE(mass, prev - 1e-12);
            EXPECT_LE(mass, m.total_area() + 1e-12);
            prev = mass;
        }
        EXPECT_NEAR(prev, m.total_area(), 1e-9);
    }
}

TEST(Properties, CurveEnergiesAreRigidMotionInvariant)
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> shift(-3.0, 3.0);
    for (std::uint64_t seed = 20; seed < 24; ++seed) {
        const ClosedPolyline c = make_fourier_random(64, seed);
        const ClosedPolyline m = c.transformed(random_rotation(rng), 1.0, {shift(rng), shift(rng), shift(rng)});
        const CurveEnergyReport a = curve_energy(c, {2.0});
        const CurveEnergyReport b = curve_energy(m, {2.0});
        EXPECT_LT(relative_gap(a.e1, b.e1), 1e-10);
        EXPECT_LT(relative_gap(a.ep.at(2.0), b.ep.at(2.0)), 1e-10);
    }
}

TEST(Properties, RandomCurvesSatisfyLowerBounds)
{
    for (std::uint64_t seed = 30; seed < 36; ++seed) {
        const CurveEnergyReport r = curve_energy(make_fourier_random(96, seed), {1.5, 2.0, 4.0});
        EXPECT_TRUE(length_bound_check(r, 1e-3).pass) << seed;
        for (const Verdict& v : normalized_bound_check(r, 1e-3)) EXPECT_TRUE(v.pass) << seed << ' ' << v.name;
    }
}

TEST(Properties, TildeDensityIsUpperSemicontinuousAtSampledPoints)
{
    // density at a vertex is at least the densities at nearby face points, up
    // to the angle deficit of a polyhedral vertex, which is of order h²
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const TriangleMesh fixtures[] = {make_spherical_cap(1.0, 48), make_flat_disk(48), make_two_disks(48, kPi / 2)};
    for (const TriangleMesh& m : fixtures) {
        const double tol = m.median_edge_length() * m.median_edge_length();
        for (int v = 0; v < m.vertex_count(); v += 7) {
            const double at_vertex = tilde_density(m, m.vertex(v)).value;
            for (int f : m.vertex_faces(v)) {
                std::vector<int> others;
                for (int w : m.face(f)) {
                    if (w != v) others.push_back(w);
                }
                const double a = 1e-3 * u(rng);
                const double b = 1e-3 * u(rng);
                const Vec3 y = (1.0 - a - b) * m.vertex(v) + a * m.vertex(others[0]) + b * m.vertex(others[1]);
                EXPECT_GE(at_vertex, tilde_density(m, y).value - tol) << v;
            }
        }
    }
}

TEST(Properties, AreaRatioStaysBoundedAlongRadii)
{
    std::mt19937_64 rng(8);
    for (int k = 0; k < 3; ++k) {
        const CapSample s = draw_cap(rng);
        const TriangleMesh m = make_perturbed_cap(s.r, 48, s.amplitude, s.mode, s.phase);
        for (int v = 0; v < m.vertex_count(); v += 53) {
            double worst = 0.0;
            for (double r : radius_grid(0.05, 4.0, 16)) {
                worst = std::max(worst, ball_mass(m, m.vertex(v), r) / (kPi * r * r));
            }
            EXPECT_LT(worst, 2.0) << v;
        }
    }
}
