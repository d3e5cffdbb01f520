#pragma once

#include "fbmono/clip.hpp"
#include "fbmono/operators.hpp"

#include <vector>

namespace fbmono {

/// One radius of a monotonicity profile. `annulus_lhs` and `delta_rhs` refer
/// to the shell between the previous radius and this one (zero for the first).
struct ProfileRecord {
    double r = 0.0;
    double g = 0.0;
    double g_hat = 0.0;
    double sum = 0.0;
    double annulus_lhs = 0.0;
    double delta_rhs = 0.0;
};

struct RadialProfile {
    Vec3 center;
    std::vector<ProfileRecord> records;
};

/// `count` geometrically spaced radii from r_min to r_max inclusive.
std::vector<double> radius_grid(double r_min, double r_max, int count);

/// Evaluates g, ĝ and the shell defect integrals at every radius. The
/// reflected ball B̂_r = B_{r/|x0|}(x0/|x0|²) is used for x0 != 0; for x0 = 0
/// the boundary branch ĝ = -min(r⁻², 1)/(2π) ∫x·η dσ applies.
/// Throws InvalidArgument unless radii are positive and strictly increasing.
RadialProfile g_profile(const TriangleMesh& mesh, const MeanCurvatureField& H, const BoundaryField& B,
                        const Vec3& x0, const std::vector<double>& radii, const ClipOptions& clip = {});

struct MonotonicityVerdict {
    bool monotone = false;
    bool identity = false;
    double min_increment = 0.0;
    double max_identity_residual = 0.0;
    double tolerance = 0.0;

    bool pass() const { return monotone && identity; }
};

MonotonicityVerdict monotonicity_check(const RadialProfile& profile, double tol);

struct DensityOptions {
    /// Ladder radii as multiples of the median edge length.
    std::vector<double> ladder{5.0, 6.0, 7.0, 8.0, 9.0, 10.0};
    /// Include the reflected-ball term (the tilde density). Ignored at x0 = 0.
    bool reflected = true;
    ClipOptions clip{};
};

struct DensityEstimate {
    Vec3 center;
    /// Tilde density: plain density at x0 plus, for x0 != 0, at x0/|x0|².
    double value = 0.0;
    /// Distance between `value` and the ladder extrapolation.
    double confidence = 0.0;
    double ladder_value = 0.0;
    /// Ladder radii and area ratios around x0, and around x0/|x0|² for the
    /// reflected part (empty when that point is off the surface).
    std::vector<double> radii;
    std::vector<double> samples;
    std::vector<double> reflected_samples;
};

/// μ(B_r)/πr², plus μ(B̂_r)/π(r/|x0|)² when `reflected` and x0 != 0.
double density_ratio(const TriangleMesh& mesh, const Vec3& x0, double r, bool reflected,
                     const ClipOptions& clip = {});

/// Limit of μ(B_r(c))/πr² as r -> 0 on the polyhedral surface: the total
/// face angle at c over 2π. At boundary vertices the signed turning angle of
/// the boundary polygon is added, which removes the corner that a polygonal
/// boundary introduces (a smooth boundary point has density 1/2).
/// Zero when c is off the mesh.
double cone_density(const TriangleMesh& mesh, const Vec3& c);

/// Tilde density at x0. The value is the cone density at x0 plus, for
/// x0 != 0 and `reflected`, the cone density at x0/|x0|². As a cross-check
/// each part is also extrapolated from the ladder of area ratios by a
/// least-squares fit a + b r + c r².
DensityEstimate tilde_density(const TriangleMesh& mesh, const Vec3& x0, const DensityOptions& options = {});

/// ∫ |H/4 + (x - c)^⊥ / |x - c|²|² dμ. When c lies within `exclusion` of the
/// surface, the ball B_exclusion(c) is skipped and refilled with the mean
/// integrand over the shell [exclusion, 2 exclusion) times its mass.
double normal_defect_integral(const TriangleMesh& mesh, const MeanCurvatureField& H, const Vec3& c,
                              double exclusion, const ClipOptions& clip = {});

/// Distance from p to the nearest face.
double distance_to_mesh(const TriangleMesh& mesh, const Vec3& p);

/// Terms of the global identity relating the defect integrals, the (tilde)
/// density, ∫|H|² and ∫x·η dσ. `defect` is the signed imbalance.
struct IntegralIdentity {
    Vec3 center;
    double defect_center = 0.0;     // (1/π) ∫|H/4 + (x-x0)^⊥/|x-x0|²|²
    double defect_reflected = 0.0;  // same around x0/|x0|², zero at x0 = 0
    double density = 0.0;           // tilde density, or plain density at x0 = 0
    double h2_term = 0.0;           // (1/8π) ∫|H|², halved at x0 = 0
    double boundary_term = 0.0;     // (1/2π) ∫x·η dσ
    double defect = 0.0;
};

IntegralIdentity integral_identity(const TriangleMesh& mesh, const MeanCurvatureField& H, const BoundaryField& B,
                                   const Vec3& x0, const ClipOptions& clip = {});

/// ∫|H|² dμ by face quadrature of the interpolated, normal-projected H.
double integral_h2(const TriangleMesh& mesh, const MeanCurvatureField& H);

/// ∫ x·η dσ from the discrete boundary field.
double boundary_position_flux(const BoundaryField& B, const TriangleMesh& mesh);

}  // namespace fbmono
