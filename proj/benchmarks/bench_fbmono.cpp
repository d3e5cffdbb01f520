#include "fbmono/clip.hpp"
#include "fbmono/monotonicity.hpp"
#include "fbmono/operators.hpp"
#include "fbmono/optimizer.hpp"
#include "fbmono/shapes.hpp"
#include "fbmono/tangent_point.hpp"

#include <benchmark/benchmark.h>

using namespace fbmono;

static void BM_MeanCurvature(benchmark::State& state)
{
    const TriangleMesh m = make_spherical_cap(1.0, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(mean_curvature(m));
    state.counters["vertices"] = m.vertex_count();
}
BENCHMARK(BM_MeanCurvature)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_BallMass(benchmark::State& state)
{
    const TriangleMesh m = make_spherical_cap(1.0, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ball_mass(m, {0.1, 0.0, 0.1}, 0.37));
}
BENCHMARK(BM_BallMass)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

static void BM_GProfile(benchmark::State& state)
{
    const TriangleMesh m = make_spherical_cap(1.0, static_cast<int>(state.range(0)));
    const MeanCurvatureField H = mean_curvature(m);
    const BoundaryField B = conormal(m);
    const std::vector<double> radii = radius_grid(0.2, 4.0, 24);
    for (auto _ : state) benchmark::DoNotOptimize(g_profile(m, H, B, {0.3, 0.0, 0.0}, radii));
}
BENCHMARK(BM_GProfile)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

static void BM_CurveEnergy(benchmark::State& state)
{
    const ClosedPolyline c = make_fourier_random(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(curve_energy(c, {2.0, 3.0}));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CurveEnergy)->RangeMultiplier(2)->Range(128, 1024)->Complexity(benchmark::oNSquared)->Unit(benchmark::kMillisecond);

static void BM_ObjectiveAndGradient(benchmark::State& state)
{
    const ClosedPolyline c = make_perturbed_circle(static_cast<int>(state.range(0)), 0.2, 4);
    for (auto _ : state) benchmark::DoNotOptimize(objective_and_gradient(c, 2.0));
}
BENCHMARK(BM_ObjectiveAndGradient)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
