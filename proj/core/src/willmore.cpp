#include "fbmono/willmore.hpp"

#include "fbmono/error.hpp"
#include "surface_terms.hpp"

#include <cmath>
#include <numbers>

namespace fbmono {

namespace {
constexpr double kPi = std::numbers::pi;
}

Admissibility free_boundary_admissibility(const TriangleMesh& mesh, const BoundaryField& B,
                                          double radius_tolerance, double angle_tolerance_deg)
{
    Admissibility a;
    a.radius_tolerance = radius_tolerance;
    a.angle_tolerance_deg = angle_tolerance_deg;
    for (std::size_t k = 0; k < B.size(); ++k) {
        const Vec3& x = mesh.vertex(B.vertices[k]);
        a.max_radius_defect = std::max(a.max_radius_defect, std::abs(norm(x) - 1.0));
        const double c = std::clamp(dot(normalized(x), B.conormal[k]), -1.0, 1.0);
        a.max_angle_deg = std::max(a.max_angle_deg, std::acos(c) * 180.0 / kPi);
    }
    return a;
}

double equality_diagnostics(const TriangleMesh& mesh, const MeanCurvatureField& H, const Vec3& x0)
{
    return std::sqrt(normal_defect_integral(mesh, H, x0, 2.0 * mesh.median_edge_length()));
}

WillmoreReport willmore_energy(const TriangleMesh& mesh, const MeanCurvatureField& H, const BoundaryField& B,
                               const WillmoreOptions& options)
{
    if (!mesh.has_boundary()) throw InvalidArgument("willmore energy needs a mesh with boundary");
    WillmoreReport rep;
    rep.quarter_h2 = 0.25 * integral_h2(mesh, H);
    rep.boundary_term = boundary_position_flux(B, mesh);
    rep.willmore = rep.quarter_h2 + rep.boundary_term;
    rep.tangential_rms = H.tangential_rms;

    for (int f = 0; f < mesh.face_count(); ++f) {
        const Face& t = mesh.face(f);
        if (!mesh.is_boundary_vertex(t[0]) && !mesh.is_boundary_vertex(t[1]) && !mesh.is_boundary_vertex(t[2])) continue;
        const double area = mesh.face_area(f);
        for (const auto& q : kTriangleRule7) {
            const auto nc = detail::normal_curvature_at(mesh, H, SurfacePoint{f, q.bary, {}});
            rep.boundary_strip += 0.25 * q.weight * area * nc.h * nc.h;
        }
    }

    if (options.compute_density) {
        int best = 0;
        for (int v = 0; v < mesh.vertex_count(); ++v) {
            const Vec3& x = mesh.vertex(v);
            double d = cone_density(mesh, x);
            if (norm(x) > 0.0) d += cone_density(mesh, invert(x));
            if (d > rep.max_tilde_density) {
                rep.max_tilde_density = d;
                best = v;
            }
        }
        rep.max_density_point = mesh.vertex(best);
        rep.density_confidence = tilde_density(mesh, rep.max_density_point, options.density).confidence;
    }
    rep.li_yau_lhs = 2.0 * kPi * rep.max_tilde_density;
    rep.embedded_flag_threshold = rep.willmore < 4.0 * kPi;

    if (options.compute_equality) {
        Vec3 centroid{};
        for (int f = 0; f < mesh.face_count(); ++f) {
            const Face& t = mesh.face(f);
            centroid += mesh.face_area(f) / 3.0 * (mesh.vertex(t[0]) + mesh.vertex(t[1]) + mesh.vertex(t[2]));
        }
        centroid = centroid / mesh.total_area();
        int nearest = 0;
        for (int v = 1; v < mesh.vertex_count(); ++v) {
            if (norm(mesh.vertex(v) - centroid) < norm(mesh.vertex(nearest) - centroid)) nearest = v;
        }
        rep.equality_center = mesh.vertex(nearest);
        rep.equality_defect = equality_diagnostics(mesh, H, rep.equality_center);
    }
    return rep;
}

Verdict li_yau_check(const WillmoreReport& report, double tol)
{
    return {"li_yau", report.li_yau_lhs <= report.willmore + tol, report.li_yau_lhs, report.willmore, tol};
}

Verdict origin_li_yau_check(const TriangleMesh& mesh, const WillmoreReport& report, double tol)
{
    const double theta = cone_density(mesh, Vec3{});
    if (theta == 0.0) return {"li_yau_origin", true, 0.0, report.willmore, tol};
    const double lhs = 2.0 * kPi * theta + 0.5 * report.quarter_h2;
    return {"li_yau_origin", lhs <= report.willmore + tol, lhs, report.willmore, tol};
}

}  // namespace fbmono
