#include "fbmono/error.hpp"
#include "fbmono/optimizer.hpp"
#include "fbmono/shapes.hpp"
#include "fbmono/tangent_point.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace fbmono;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST(Optimizer, ObjectiveMatchesEnergyReport)
{
    const ClosedPolyline c = make_trefoil(64);
    const ObjectiveGradient og = objective_and_gradient(c, 2.0);
    const CurveEnergyReport r = curve_energy(c, {2.0});
    EXPECT_NEAR(og.value, r.normalized_ep.at(2.0), 1e-12 * og.value);
    EXPECT_NEAR(og.length, c.length(), 1e-14);
    EXPECT_EQ(og.gradient.size(), 64u);
    EXPECT_DOUBLE_EQ(objective_value(c, 2.0), og.value);
}

TEST(Optimizer, GradientMatchesCentralDifferences)
{
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        EXPECT_LT(gradient_check(make_fourier_random(32, seed), 2.0), 1e-5) << seed;
    }
    EXPECT_LT(gradient_check(make_fourier_random(24, 11), 3.0), 1e-5);
}

TEST(Optimizer, GradientIsTranslationFree)
{
    const ObjectiveGradient og = objective_and_gradient(make_fourier_random(40, 4), 2.0);
    Vec3 total;
    for (const Vec3& g : og.gradient) total += g;
    double scale = 0.0;
    for (const Vec3& g : og.gradient) scale = std::max(scale, norm(g));
    EXPECT_LT(norm(total), 1e-9 * scale * 40);
}

TEST(Optimizer, ResamplingPreservesShape)
{
    const ClosedPolyline c = make_perturbed_circle(128, 0.2, 4);
    const ClosedPolyline r = resample_uniform(c);
    EXPECT_EQ(r.size(), c.size());
    EXPECT_NEAR(r.length(), c.length(), 0.005 * c.length());
    EXPECT_EQ(norm(r.point(0) - c.point(0)), 0.0);
    double lo = INFINITY, hi = 0.0;
    for (int i = 0; i < r.size(); ++i) {
        const double e = norm(r.point(r.next(i)) - r.point(i));
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    EXPECT_LT(hi / lo, 1.01);
}

TEST(Optimizer, ConfigValidation)
{
    OptimizerConfig c;
    EXPECT_NO_THROW(c.validate());
    c.p = 1.0;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c = {};
    c.shrink = 1.0;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c = {};
    c.initial_step = 0.0;
    EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(Optimizer, CircleIsAlreadyOptimal)
{
    OptimizerConfig cfg;
    const OptimizerTrace t = minimize(make_circle(1.0, 64), cfg);
    EXPECT_TRUE(t.converged);
    EXPECT_LE(t.objective.size(), 2u);
}

TEST(Optimizer, PerturbedCircleRelaxesMonotonically)
{
    OptimizerConfig cfg;
    cfg.max_iters = 400;
    const OptimizerTrace t = minimize(make_perturbed_circle(64, 0.2, 3), cfg);
    for (std::size_t i = 1; i < t.objective.size(); ++i) EXPECT_LE(t.objective[i], t.objective[i - 1]);
    EXPECT_LT(t.objective.back(), 1.01 * kTwoPi);
    EXPECT_GE(t.objective.back(), kTwoPi - 10.0 / 64);
    EXPECT_LT(roundness(t.final_curve), roundness(make_perturbed_circle(64, 0.2, 3)));
    EXPECT_EQ(t.objective.size(), t.grad_norm.size());
    EXPECT_EQ(t.objective.size(), t.length.size());
}

TEST(Optimizer, GrowRuleAlsoDescends)
{
    OptimizerConfig cfg;
    cfg.step_rule = StepRule::Grow;
    cfg.max_iters = 100;
    const OptimizerTrace t = minimize(make_perturbed_circle(48, 0.2, 4), cfg);
    EXPECT_LT(t.objective.back(), t.objective.front());
}
