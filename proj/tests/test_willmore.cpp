#include "fbmono/error.hpp"
#include "fbmono/shapes.hpp"
#include "fbmono/willmore.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace fbmono;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

WillmoreReport energy(const TriangleMesh& m, bool density = true)
{
    WillmoreOptions o;
    o.compute_density = density;
    o.compute_equality = density;
    return willmore_energy(m, mean_curvature(m), conormal(m), o);
}
}  // namespace

TEST(Willmore, DiskIsAnEqualityCase)
{
    const WillmoreReport w = energy(make_flat_disk(96));
    EXPECT_NEAR(w.willmore, kTwoPi, 0.008 * kTwoPi);
    EXPECT_LT(std::abs(w.quarter_h2), 1e-12);
    EXPECT_NEAR(w.max_tilde_density, 1.0, 1e-9);
    EXPECT_LT(w.equality_defect, 0.05);
}

TEST(Willmore, CapsAreEqualityCasesWithSecondOrderError)
{
    for (double r : {0.5, 1.0, 2.0}) {
        const double e96 = energy(make_spherical_cap(r, 96), false).willmore - kTwoPi;
        const double e192 = energy(make_spherical_cap(r, 192), false).willmore - kTwoPi;
        EXPECT_LT(std::abs(e96), 0.008 * kTwoPi) << r;
        EXPECT_LT(std::abs(e192), 0.35 * std::abs(e96)) << r;
    }
}

TEST(Willmore, CapComponentsMatchClosedForm)
{
    // ¼∫|H|² = area / r² and ∫x·η is the boundary length 2πr / √(1 + r²)
    const double r = 0.5;
    const WillmoreReport w = energy(make_spherical_cap(r, 96), false);
    EXPECT_NEAR(w.quarter_h2, spherical_cap_area(r) / (r * r), 1e-2 * spherical_cap_area(r) / (r * r));
    EXPECT_NEAR(w.boundary_term, kTwoPi * r / std::sqrt(1.0 + r * r), 1e-3);
    EXPECT_GT(w.boundary_strip, 0.0);
    EXPECT_LT(w.boundary_strip, w.quarter_h2);
}

TEST(Willmore, PerturbedCapHasStrictMargin)
{
    const WillmoreReport w = energy(make_perturbed_cap(1.0, 96, 0.35, 3, 0.4));
    EXPECT_GT(w.willmore - kTwoPi, 0.05);
    EXPECT_TRUE(li_yau_check(w, 1e-3).pass);
    EXPECT_GT(w.equality_defect, energy(make_spherical_cap(1.0, 96)).equality_defect);
}

TEST(Willmore, TwoDisksDoubleEverything)
{
    const WillmoreReport w = energy(make_two_disks(96, std::numbers::pi / 2));
    EXPECT_NEAR(w.max_tilde_density, 2.0, 0.1);
    EXPECT_NEAR(w.willmore, 2.0 * kTwoPi, 0.01 * 2.0 * kTwoPi);
    EXPECT_TRUE(w.embedded_flag_threshold || w.max_tilde_density >= 2.0 - 1e-9);
}

TEST(Willmore, OriginCheckOnDisk)
{
    const TriangleMesh m = make_flat_disk(96);
    const WillmoreReport w = energy(m);
    const Verdict v = origin_li_yau_check(m, w, 1e-2);
    EXPECT_TRUE(v.pass);
    EXPECT_NEAR(v.measured, kTwoPi, 1e-9);
    // the origin is not on the cap, so the check is vacuous there
    const TriangleMesh cap = make_spherical_cap(1.0, 48);
    EXPECT_EQ(origin_li_yau_check(cap, energy(cap), 1e-2).measured, 0.0);
}

TEST(Willmore, RequiresBoundary)
{
    const TriangleMesh s = make_sphere(1.0, 2);
    EXPECT_THROW(willmore_energy(s, mean_curvature(s), BoundaryField{}), InvalidArgument);
}

TEST(Admissibility, CapsPassAndTiltedDiskFails)
{
    const TriangleMesh cap = make_spherical_cap(1.0, 96);
    const Admissibility a = free_boundary_admissibility(cap, conormal(cap));
    EXPECT_TRUE(a.admissible());
    EXPECT_LT(a.max_radius_defect, 1e-12);
    EXPECT_LT(a.max_angle_deg, 0.5);

    const TriangleMesh shifted = make_flat_disk(48).transformed(Mat3::identity(), 1.0, {0, 0, 0.2});
    const Admissibility b = free_boundary_admissibility(shifted, conormal(shifted));
    EXPECT_FALSE(b.admissible());
    EXPECT_GT(b.max_radius_defect, 0.01);
}

TEST(Admissibility, EqualityDiagnosticsVanishOnDisk)
{
    const TriangleMesh m = make_flat_disk(48);
    EXPECT_LT(equality_diagnostics(m, mean_curvature(m), {0.2, 0.1, 0.0}), 1e-9);
}
