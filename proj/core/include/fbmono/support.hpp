#pragma once

#include "fbmono/monotonicity.hpp"
#include "fbmono/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fbmono {

/// Sampled support surface S with outward unit normals γ. Spheres and
/// axis-aligned ellipsoids additionally carry an analytic description that
/// gives exact normals, normal curvatures and principal curvatures.
class SupportSurface {
public:
    enum class Kind { Sphere, Ellipsoid, PointCloud };

    /// Sphere of radius `radius` about `center`, with `samples` near-uniform
    /// sample points (spiral lattice).
    static SupportSurface sphere(const Vec3& center, double radius, int samples);
    /// Ellipsoid x²/a² + y²/b² + z²/c² = 1 with `samples` sample points.
    static SupportSurface ellipsoid(double a, double b, double c, int samples);
    /// Arbitrary samples; normals are normalized. Throws InvalidArgument on
    /// size mismatch, zero normals or fewer than two points.
    static SupportSurface point_cloud(std::vector<Vec3> points, std::vector<Vec3> normals);

    Kind kind() const { return kind_; }
    bool analytic() const { return kind_ != Kind::PointCloud; }
    const std::vector<Vec3>& points() const { return points_; }
    const std::vector<Vec3>& normals() const { return normals_; }
    std::size_t size() const { return points_.size(); }
    /// Center and semi-axes of analytic surfaces.
    const Vec3& center() const { return center_; }
    const Vec3& axes() const { return axes_; }

    /// Outward unit normal at (or at the nearest sample to) x.
    Vec3 normal_at(const Vec3& x) const;
    /// Normal curvature in unit tangent direction d at x (analytic only),
    /// positive for convex bodies.
    double normal_curvature(const Vec3& x, const Vec3& d) const;
    /// Largest principal curvature at x (analytic only).
    double max_principal_curvature(const Vec3& x) const;
    /// Maximum of the largest principal curvature over the surface (analytic
    /// only): 1/R for spheres, max(a/b², a/c², b/a², ...) for ellipsoids.
    double curvature_bound() const;
    /// Mean spacing of the samples.
    double sample_spacing() const { return spacing_; }
    std::string describe() const;

    /// Level function (zero on S) for analytic surfaces.
    double level(const Vec3& x) const;

private:
    Kind kind_ = Kind::PointCloud;
    Vec3 center_;
    Vec3 axes_{1, 1, 1};
    std::vector<Vec3> points_;
    std::vector<Vec3> normals_;
    double spacing_ = 0.0;
};

/// Z(x, y) = 2 (x - y)·γ(x) / |x - y|². Throws InvalidArgument if x == y.
double z_kernel(const Vec3& x, const Vec3& gamma_x, const Vec3& y);

struct BallCurvatureReport {
    std::vector<double> upper;  // κ̄_A per sample
    std::vector<double> lower;  // κ̲_A per sample
    std::vector<double> kappa;  // max(κ̄, -κ̲)
    double sup_upper = 0.0;
    double inf_lower = 0.0;
    std::size_t argmax_x = 0;
    std::size_t argmax_y = 0;  // equals argmax_x when attained in the diagonal limit
    /// Point clouds: pairs closer than twice the sample spacing are skipped.
    double exclusion_radius = 0.0;
};

struct BallCurvatureOptions {
    /// Include the diagonal limit (normal curvature) for analytic surfaces.
    bool diagonal_limit = true;
    /// Refine the best far pair by maximizing Z(x, ·) over S (analytic only).
    bool polish = true;
};

/// Extrema of Z(x_i, y) over y in the sample subset `subset` (all samples when
/// empty), for every x_i in the subset. Throws InvalidArgument for |A| < 2.
BallCurvatureReport ball_curvatures(const SupportSurface& S, const std::vector<std::size_t>& subset = {},
                                    const BallCurvatureOptions& options = {});

/// Both sides of
///   2θ²(x0) + (2/π)∫|H/4 + (x-x0)^⊥/|x-x0|²|² = (1/8π)∫|H|² + (1/2π)∫Z(x, x0) dσ.
struct CurvatureIdentity {
    double density = 0.0;
    double defect_integral = 0.0;
    double h2_term = 0.0;
    double z_term = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

/// x0 must be a boundary vertex position (within 1e-9 h); throws
/// InvalidArgument otherwise.
CurvatureIdentity boundary_curvature_identity(const TriangleMesh& mesh, const MeanCurvatureField& H,
                                              const BoundaryField& B, const SupportSurface& S, const Vec3& x0);

struct SupportAdmissibility {
    double max_level_defect = 0.0;  // analytic surfaces only
    double max_angle_deg = 0.0;     // angle between η and γ
    double angle_tolerance_deg = 2.0;
    bool admissible() const { return max_angle_deg <= angle_tolerance_deg && max_level_defect <= 1e-6; }
};

SupportAdmissibility support_admissibility(const TriangleMesh& mesh, const BoundaryField& B,
                                           const SupportSurface& S, double angle_tolerance_deg = 2.0);

struct SupportInequality {
    double quarter_h2 = 0.0;
    double kappa_integral = 0.0;  // ∫ κ̄_{spt σ} dσ
    double boundary_length = 0.0;
    double curvature_bound = 0.0;  // k, analytic convex surfaces only
    Verdict ball_curvature;        // 2π ≤ ¼∫|H|² + ∫κ̄ dσ
    std::optional<Verdict> convex_bound;  // 2π ≤ ¼∫|H|² + k σ
};

/// κ̄ at each boundary vertex is the supremum of Z over the other boundary
/// vertices, together with the normal curvature of S along the boundary
/// tangent for analytic S.
SupportInequality support_inequality_check(const TriangleMesh& mesh, const MeanCurvatureField& H,
                                           const BoundaryField& B, const SupportSurface& S, double tol);

}  // namespace fbmono
