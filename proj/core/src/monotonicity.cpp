#include "fbmono/monotonicity.hpp"

#include "fbmono/error.hpp"
#include "surface_terms.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace fbmono {

namespace {

constexpr double kPi = std::numbers::pi;

// Shifts r off any vertex distance from c (scaled by `scale`), so sphere
// boundaries never pass through mesh vertices.
double nudge_radius(const TriangleMesh& mesh, const Vec3& c, double r)
{
    for (const Vec3& v : mesh.vertices()) {
        if (std::abs(norm(v - c) - r) <= 1e-9 * r) return r * (1.0 + 1e-7);
    }
    return r;
}

struct BallTerms {
    double mass = 0.0;
    double h2 = 0.0;
    double h_dot_offset = 0.0;  // ∫ H·(x - c)
};

BallTerms ball_terms(const TriangleMesh& mesh, const MeanCurvatureField& H, const Vec3& c, double r,
                     const ClipOptions& clip)
{
    const auto v = integrate_region<3>(
        mesh, Region::ball(c, r),
        [&](const SurfacePoint& p) {
            const auto nc = detail::normal_curvature_at(mesh, H, p);
            return std::array<double, 3>{1.0, nc.h * nc.h, nc.h * dot(nc.n, p.x - c)};
        },
        clip);
    return {v[0], v[1], v[2]};
}

struct ReflectedTerms {
    BallTerms ball;
    double offset_terms = 0.0;  // ∫ |x-ξ|² + P_x(x-ξ)·x
    double weighted_h = 0.0;    // ∫ H·(|x-ξ|² x)
    double h_dot_x = 0.0;       // ∫ H·x
};

ReflectedTerms reflected_terms(const TriangleMesh& mesh, const MeanCurvatureField& H, const Vec3& xi, double r,
                               const ClipOptions& clip)
{
    const auto v = integrate_region<6>(
        mesh, Region::ball(xi, r),
        [&](const SurfacePoint& p) {
            const auto nc = detail::normal_curvature_at(mesh, H, p);
            const Vec3 d = p.x - xi;
            const double d2 = norm2(d);
            const double hx = nc.h * dot(nc.n, p.x);
            const double tangential = dot(d, p.x) - dot(d, nc.n) * dot(nc.n, p.x);
            return std::array<double, 6>{1.0, nc.h * nc.h, nc.h * dot(nc.n, d), d2 + tangential, d2 * hx, hx};
        },
        clip);
    ReflectedTerms t;
    t.ball = {v[0], v[1], v[2]};
    t.offset_terms = v[3];
    t.weighted_h = v[4];
    t.h_dot_x = v[5];
    return t;
}

double shell_defect(const TriangleMesh& mesh, const MeanCurvatureField& H, const Vec3& c, double inner,
                    double outer, const ClipOptions& clip)
{
    return integrate_region<1>(
        mesh, Region::shell(c, inner, outer),
        [&](const SurfacePoint& p) {
            return std::array<double, 1>{detail::normal_defect_density(detail::normal_curvature_at(mesh, H, p), p.x, c)};
        },
        clip)[0];
}

double g_value(const BallTerms& b, double r)
{
    return b.mass / (kPi * r * r) + b.h2 / (16.0 * kPi) + b.h_dot_offset / (2.0 * kPi * r * r);
}

}  // namespace

std::vector<double> radius_grid(double r_min, double r_max, int count)
{
    if (!(r_min > 0.0) || !(r_max > r_min) || count < 2) throw InvalidArgument("radius grid needs 0 < r_min < r_max and count >= 2");
    std::vector<double> radii(static_cast<std::size_t>(count));
    const double ratio = std::log(r_max / r_min);
    for (int i = 0; i < count; ++i) radii[static_cast<std::size_t>(i)] = r_min * std::exp(ratio * i / (count - 1));
    radii.back() = r_max;
    return radii;
}

double integral_h2(const TriangleMesh& mesh, const MeanCurvatureField& H)
{
    return deterministic_sum<double>(static_cast<std::size_t>(mesh.face_count()), [&](std::size_t fi) {
        const int f = static_cast<int>(fi);
        const double area = mesh.face_area(f);
        double acc = 0.0;
        for (const auto& q : kTriangleRule7) {
            const auto nc = detail::normal_curvature_at(mesh, H, SurfacePoint{f, q.bary, {}});
            acc += q.weight * area * nc.h * nc.h;
        }
        return acc;
    });
}

double boundary_position_flux(const BoundaryField& B, const TriangleMesh& mesh)
{
    double acc = 0.0;
    for (std::size_t k = 0; k < B.size(); ++k) acc += B.weights[k] * dot(mesh.vertex(B.vertices[k]), B.conormal[k]);
    return acc;
}

RadialProfile g_profile(const TriangleMesh& mesh, const MeanCurvatureField& H, const BoundaryField& B,
                        const Vec3& x0, const std::vector<double>& radii, const ClipOptions& clip)
{
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) throw InvalidArgument("profile radii must be positive");
        if (i > 0 && !(radii[i] > radii[i - 1])) throw InvalidArgument("profile radii must be strictly increasing");
    }
    RadialProfile profile;
    profile.center = x0;
    const double s = norm(x0);
    const bool origin = s == 0.0;
    const Vec3 xi = origin ? Vec3{} : invert(x0);
    const double flux = B.size() > 0 ? boundary_position_flux(B, mesh) : 0.0;

    std::vector<double> used(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        double r = nudge_radius(mesh, x0, radii[i]);
        if (!origin) r = s * nudge_radius(mesh, xi, r / s);
        used[i] = r;
    }

    for (std::size_t i = 0; i < used.size(); ++i) {
        const double r = used[i];
        ProfileRecord rec;
        rec.r = r;
        rec.g = g_value(ball_terms(mesh, H, x0, r, clip), r);
        if (origin) {
            rec.g_hat = -std::min(1.0 / (r * r), 1.0) / (2.0 * kPi) * flux;
        } else {
            const double rh = r / s;
            const ReflectedTerms t = reflected_terms(mesh, H, xi, rh, clip);
            const double a = kPi * rh * rh;
            rec.g_hat = g_value(t.ball, rh) - t.offset_terms / a - t.weighted_h / (2.0 * a) +
                        t.h_dot_x / (2.0 * kPi) + t.ball.mass / kPi;
        }
        rec.sum = rec.g + rec.g_hat;
        if (i > 0) {
            const double lo = used[i - 1];
            double lhs = shell_defect(mesh, H, x0, lo, r, clip);
            if (!origin) lhs += shell_defect(mesh, H, xi, lo / s, r / s, clip);
            rec.annulus_lhs = lhs / kPi;
            rec.delta_rhs = rec.sum - profile.records.back().sum;
        }
        profile.records.push_back(rec);
    }
    return profile;
}

MonotonicityVerdict monotonicity_check(const RadialProfile& profile, double tol)
{
    MonotonicityVerdict v;
    v.tolerance = tol;
    v.min_increment = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < profile.records.size(); ++i) {
        const auto& a = profile.records[i - 1];
        const auto& b = profile.records[i];
        if (!(b.r > a.r)) throw InvalidArgument("profile radii must be strictly increasing");
        v.min_increment = std::min(v.min_increment, b.sum - a.sum);
        v.max_identity_residual = std::max(v.max_identity_residual, std::abs(b.annulus_lhs - b.delta_rhs));
    }
    if (profile.records.size() < 2) v.min_increment = 0.0;
    v.monotone = v.min_increment >= -tol;
    v.identity = v.max_identity_residual <= tol;
    return v;
}

double distance_to_mesh(const TriangleMesh& mesh, const Vec3& p)
{
    double best = std::numeric_limits<double>::infinity();
    for (int f = 0; f < mesh.face_count(); ++f) {
        const Face& t = mesh.face(f);
        best = std::min(best, point_triangle_distance(p, mesh.vertex(t[0]), mesh.vertex(t[1]), mesh.vertex(t[2])));
    }
    return best;
}

double density_ratio(const TriangleMesh& mesh, const Vec3& x0, double r, bool reflected, const ClipOptions& clip)
{
    double value = ball_mass(mesh, x0, r, clip) / (kPi * r * r);
    const double s = norm(x0);
    if (reflected && s > 0.0) {
        const double rh = r / s;
        value += ball_mass(mesh, invert(x0), rh, clip) / (kPi * rh * rh);
    }
    return value;
}

namespace {

double fit_ladder(const std::vector<double>& x, const std::vector<double>& y)
{
    // Least squares for a + b x + c x² via normal equations.
    double S[5] = {0, 0, 0, 0, 0};
    double T[3] = {0, 0, 0};
    for (std::size_t k = 0; k < x.size(); ++k) {
        double p = 1.0;
        for (int e = 0; e < 5; ++e) {
            S[e] += p;
            if (e < 3) T[e] += p * y[k];
            p *= x[k];
        }
    }
    auto det3 = [](double a, double b, double c, double d, double e, double f, double g, double h, double i) {
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
    };
    const double quad = det3(T[0], S[1], S[2], T[1], S[2], S[3], T[2], S[3], S[4]) /
                        det3(S[0], S[1], S[2], S[1], S[2], S[3], S[2], S[3], S[4]);

    return std::max(0.0, quad);
}

}  // namespace

double cone_density(const TriangleMesh& mesh, const Vec3& c)
{
    const double tol = 1e-8 * mesh.median_edge_length();
    double angle = 0.0;
    std::vector<int> corners;
    for (int f = 0; f < mesh.face_count(); ++f) {
        const Face& t = mesh.face(f);
        const std::array<Vec3, 3> x{mesh.vertex(t[0]), mesh.vertex(t[1]), mesh.vertex(t[2])};
        if (point_triangle_distance(c, x[0], x[1], x[2]) > tol) continue;
        int corner = -1;
        for (int k = 0; k < 3; ++k) {
            if (norm(c - x[static_cast<std::size_t>(k)]) <= tol) corner = k;
        }
        if (corner >= 0) {
            const Vec3& p = x[static_cast<std::size_t>(corner)];
            const Vec3 u = x[static_cast<std::size_t>((corner + 1) % 3)] - p;
            const Vec3 v = x[static_cast<std::size_t>((corner + 2) % 3)] - p;
            angle += std::atan2(norm(cross(u, v)), dot(u, v));
            const int vi = t[static_cast<std::size_t>(corner)];
            if (mesh.is_boundary_vertex(vi) && std::find(corners.begin(), corners.end(), vi) == corners.end()) {
                corners.push_back(vi);
            }
            continue;
        }
        bool on_edge = false;
        for (int k = 0; k < 3; ++k) {
            const Vec3& a = x[static_cast<std::size_t>(k)];
            const Vec3& b = x[static_cast<std::size_t>((k + 1) % 3)];
            const Vec3 e = b - a;
            const double s = std::clamp(dot(c - a, e) / norm2(e), 0.0, 1.0);
            if (norm(c - (a + s * e)) <= tol) on_edge = true;
        }
        angle += on_edge ? kPi : 2.0 * kPi;
    }
    for (int vi : corners) {
        for (const auto& loop : mesh.boundary_loops()) {
            const auto it = std::find(loop.begin(), loop.end(), vi);
            if (it == loop.end()) continue;
            const std::size_t k = static_cast<std::size_t>(it - loop.begin());
            const Vec3& prev = mesh.vertex(loop[(k + loop.size() - 1) % loop.size()]);
            const Vec3& next = mesh.vertex(loop[(k + 1) % loop.size()]);
            const Vec3& here = mesh.vertex(vi);
            Vec3 n{};
            for (int f : mesh.vertex_faces(vi)) n += mesh.face_area(f) * mesh.face_normal(f);
            n = normalized(n);
            // Turning within the tangent plane (geodesic part only).
            const Vec3 e1 = reject(here - prev, n);
            const Vec3 e2 = reject(next - here, n);
            const double turn = std::atan2(norm(cross(e1, e2)), dot(e1, e2));
            angle += dot(cross(e1, e2), n) >= 0.0 ? turn : -turn;
        }
    }
    return angle / (2.0 * kPi);
}

DensityEstimate tilde_density(const TriangleMesh& mesh, const Vec3& x0, const DensityOptions& options)
{
    if (options.ladder.size() < 3) throw InvalidArgument("density ladder needs at least three radii");
    DensityEstimate est;
    est.center = x0;
    const double h = mesh.median_edge_length();
    for (double m : options.ladder) est.radii.push_back(m * h);

    auto part = [&](const Vec3& c, std::vector<double>& samples) {
        const double cone = cone_density(mesh, c);
        est.value += cone;
        if (cone == 0.0) return;
        for (double r : est.radii) samples.push_back(ball_mass(mesh, c, r, options.clip) / (kPi * r * r));
        est.ladder_value += fit_ladder(options.ladder, samples);
    };
    part(x0, est.samples);
    if (options.reflected && norm(x0) > 0.0) part(invert(x0), est.reflected_samples);
    est.confidence = std::abs(est.value - est.ladder_value);
    return est;
}

double normal_defect_integral(const TriangleMesh& mesh, const MeanCurvatureField& H, const Vec3& c,
                              double exclusion, const ClipOptions& clip)
{
    auto integrand = [&](const SurfacePoint& p) {
        return std::array<double, 2>{detail::normal_defect_density(detail::normal_curvature_at(mesh, H, p), p.x, c), 1.0};
    };
    if (distance_to_mesh(mesh, c) >= exclusion) {
        return integrate_region<2>(mesh, Region::exterior(c, 0.0), integrand, clip)[0];
    }
    const double outer = integrate_region<2>(mesh, Region::exterior(c, 2.0 * exclusion), integrand, clip)[0];
    const auto ring = integrate_region<2>(mesh, Region::shell(c, exclusion, 2.0 * exclusion), integrand, clip);
    const double core = ball_mass(mesh, c, exclusion, clip);
    const double mean = ring[1] > 0.0 ? ring[0] / ring[1] : 0.0;
    return outer + ring[0] + mean * core;
}

IntegralIdentity integral_identity(const TriangleMesh& mesh, const MeanCurvatureField& H, const BoundaryField& B,
                                   const Vec3& x0, const ClipOptions& clip)
{
    IntegralIdentity id;
    id.center = x0;
    const double exclusion = 2.0 * mesh.median_edge_length();
    const double s = norm(x0);
    const double h2 = integral_h2(mesh, H);
    id.boundary_term = boundary_position_flux(B, mesh) / (2.0 * kPi);
    id.defect_center = normal_defect_integral(mesh, H, x0, exclusion, clip) / kPi;
    DensityOptions dens;
    dens.clip = clip;
    if (s > 0.0) {
        id.defect_reflected = normal_defect_integral(mesh, H, invert(x0), exclusion, clip) / kPi;
        id.density = tilde_density(mesh, x0, dens).value;
        id.h2_term = h2 / (8.0 * kPi);
        id.defect = id.defect_center + id.defect_reflected + id.density - id.h2_term - id.boundary_term;
    } else {
        dens.reflected = false;
        id.density = tilde_density(mesh, x0, dens).value;
        id.h2_term = h2 / (16.0 * kPi);
        id.defect = id.defect_center - id.h2_term - id.boundary_term + id.density;
    }
    return id;
}

}  // namespace fbmono
