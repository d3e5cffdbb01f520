#pragma once

#include "fbmono/monotonicity.hpp"
#include "fbmono/verdict.hpp"

namespace fbmono {

/// How far a mesh is from meeting the unit sphere orthogonally.
struct Admissibility {
    double max_radius_defect = 0.0;  // max | |v| - 1 | over boundary vertices
    double max_angle_deg = 0.0;      // max angle between η and the sphere normal
    double radius_tolerance = 1e-6;
    double angle_tolerance_deg = 2.0;

    bool admissible() const
    {
        return max_radius_defect <= radius_tolerance && max_angle_deg <= angle_tolerance_deg;
    }
};

Admissibility free_boundary_admissibility(const TriangleMesh& mesh, const BoundaryField& B,
                                          double radius_tolerance = 1e-6, double angle_tolerance_deg = 2.0);

struct WillmoreOptions {
    bool compute_density = true;
    bool compute_equality = true;
    DensityOptions density{};
};

struct WillmoreReport {
    double quarter_h2 = 0.0;
    double boundary_term = 0.0;
    double willmore = 0.0;
    /// Part of quarter_h2 carried by faces touching the boundary, where H
    /// is an interior-limit value.
    double boundary_strip = 0.0;
    double max_tilde_density = 0.0;
    Vec3 max_density_point;
    double density_confidence = 0.0;
    double li_yau_lhs = 0.0;
    bool embedded_flag_threshold = false;
    double equality_defect = 0.0;
    Vec3 equality_center;
    double tangential_rms = 0.0;
};

/// ¼∫|H|² dμ + ∫x·η dσ with the tilde-density maximum over vertices and the
/// equality defect about the vertex nearest the area centroid.
/// Throws InvalidArgument for meshes without boundary.
WillmoreReport willmore_energy(const TriangleMesh& mesh, const MeanCurvatureField& H, const BoundaryField& B,
                               const WillmoreOptions& options = {});

/// 2π·max tilde density ≤ willmore + tol.
Verdict li_yau_check(const WillmoreReport& report, double tol);

/// 2πθ²(0) + ⅛∫|H|² ≤ willmore + tol, for surfaces through the origin.
/// Passes vacuously (measured 0) when the origin is off the mesh.
Verdict origin_li_yau_check(const TriangleMesh& mesh, const WillmoreReport& report, double tol);

/// μ-weighted L² norm of H/4 + (x - x0)^⊥/|x - x0|²; the singular core
/// around x0 is handled as in normal_defect_integral with exclusion 2h.
double equality_diagnostics(const TriangleMesh& mesh, const MeanCurvatureField& H, const Vec3& x0);

}  // namespace fbmono
