#pragma once

#include "fbmono/curve.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fbmono {

/// Trial step for the backtracking line search.
enum class StepRule {
    Grow,            // previous accepted step times `growth`
    BarzilaiBorwein  // s·s / s·y from the last two iterates, clamped
};

struct OptimizerConfig {
    double p = 2.0;
    int max_iters = 2000;
    double initial_step = 1e-3;
    double shrink = 0.5;
    double growth = 2.0;
    double sufficient_decrease = 1e-4;
    /// Stop when the relative objective change of an accepted step drops
    /// below this value.
    double tolerance = 1e-12;
    /// Stop when max_i |∇_i F| · L drops below this value.
    double gradient_tolerance = 1e-9;
    int resample_every = 50;  // 0 disables resampling
    StepRule step_rule = StepRule::BarzilaiBorwein;
    std::uint64_t seed = 0;

    /// Throws InvalidArgument naming the offending field.
    void validate() const;
};

/// Objective E_p^{1/p} L^{1-2/p} and its exact gradient with respect to the
/// vertex positions (through kernels, tangents, Menger closures, arc weights
/// and length).
struct ObjectiveGradient {
    double value = 0.0;
    double energy = 0.0;
    double length = 0.0;
    std::vector<Vec3> gradient;
};

ObjectiveGradient objective_and_gradient(const ClosedPolyline& curve, double p);
double objective_value(const ClosedPolyline& curve, double p);

/// Maximum relative error of the analytic gradient against central
/// differences with step `h` (relative to the curve length), normalized by the
/// largest gradient component.
double gradient_check(const ClosedPolyline& curve, double p, double h = 1e-6);

/// Same vertex count, equally spaced in arclength along the polygon,
/// starting at vertex 0.
ClosedPolyline resample_uniform(const ClosedPolyline& curve);

struct ResampleEvent {
    int iteration = 0;
    double length_before = 0.0;
    double length_after = 0.0;
    double objective_before = 0.0;
    double objective_after = 0.0;
    bool accepted = false;
};

struct OptimizerTrace {
    std::vector<double> objective;
    std::vector<double> grad_norm;
    std::vector<double> length;
    std::vector<ResampleEvent> resamples;
    ClosedPolyline final_curve;
    bool converged = false;
    bool line_search_failed = false;
    std::string stop_reason;
};

/// Backtracking gradient descent. Accepted steps satisfy the Armijo
/// condition, so the objective trace never increases; a resample is kept
/// only if it does not increase the objective either.
OptimizerTrace minimize(const ClosedPolyline& curve, const OptimizerConfig& config);

/// max / min distance of the vertices to their centroid.
double roundness(const ClosedPolyline& curve);

}  // namespace fbmono
