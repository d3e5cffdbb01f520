#pragma once

#include "fbmono/curve.hpp"
#include "fbmono/verdict.hpp"

#include <map>
#include <vector>

namespace fbmono {

/// |x - y|² / (2 dist(y - x, x + ℝ tx)); +∞ when y - x is parallel to tx.
/// Throws InvalidArgument if x == y.
double tangent_point_radius(const Vec3& x, const Vec3& tx, const Vec3& y);

/// 1 / tangent_point_radius, zero for parallel pairs.
double tangent_point_kernel(const Vec3& x, const Vec3& tx, const Vec3& y);

struct CurveEnergyReport {
    double length = 0.0;
    double e1 = 0.0;
    std::map<double, double> ep;             // p -> E_p, includes p = 1
    std::map<double, double> normalized_ep;  // p -> E_p^{1/p} L^{1-2/p}
    /// Per base vertex: Σ_j ℓ_j / R(x_j, x_i) with the tangent at the moving
    /// point x_j.
    std::vector<double> per_point_integral;
    /// Same with the tangent at the base vertex.
    std::vector<double> per_point_dual;
};

/// Discrete E_p = Σ_i Σ_j ℓ_i ℓ_j (1/R(x_i, x_j))^p with the tangent at x_i.
/// Pairs with j ∈ {i-1, i, i+1} use the Menger curvature at i as the kernel.
/// Requires at least 8 vertices and every p in (1, 8]; p = 1 is always added.
CurveEnergyReport curve_energy(const ClosedPolyline& curve, const std::vector<double>& p_list = {});

/// 2π L ≤ E_1 + tol.
Verdict length_bound_check(const CurveEnergyReport& report, double tol);
bool length_bound_equality(const CurveEnergyReport& report, double tol);

/// E_p^{1/p} L^{1-2/p} ≥ 2π - tol for each p > 1 in the report.
std::vector<Verdict> normalized_bound_check(const CurveEnergyReport& report, double tol);

struct PointwiseIntegrals {
    double moving_tangent = 0.0;
    double base_tangent = 0.0;
};

/// Per-point integrals at one base vertex (see CurveEnergyReport).
PointwiseIntegrals pointwise_integrals(const ClosedPolyline& curve, int base);

}  // namespace fbmono
