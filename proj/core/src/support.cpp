#include "fbmono/support.hpp"

#include "fbmono/error.hpp"
#include "fbmono/parallel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace fbmono {

namespace {

constexpr double kPi = std::numbers::pi;

// Spiral lattice on the unit sphere.
std::vector<Vec3> spiral_points(int n)
{
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / n;
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * k;
        pts.push_back({rho * std::cos(phi), rho * std::sin(phi), z});
    }
    return pts;
}

double mean_spacing(double area, std::size_t n) { return std::sqrt(area / static_cast<double>(n)); }

// Largest and smallest eigenvalue of the shape operator D/|g| restricted to
// the tangent plane with unit normal n, for D = diag(d).
std::pair<double, double> tangent_eigen(const Vec3& d, const Vec3& n, double g)
{
    const Vec3 helper = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    const Vec3 e1 = normalized(reject(helper, n));
    const Vec3 e2 = cross(n, e1);
    auto form = [&](const Vec3& u, const Vec3& v) { return (u.x * d.x * v.x + u.y * d.y * v.y + u.z * d.z * v.z) / g; };
    const double a = form(e1, e1);
    const double b = form(e1, e2);
    const double c = form(e2, e2);
    const double mid = 0.5 * (a + c);
    const double rad = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    return {mid + rad, mid - rad};
}

}  // namespace

SupportSurface SupportSurface::sphere(const Vec3& center, double radius, int samples)
{
    if (!(radius > 0.0)) throw InvalidArgument("support sphere radius must be positive");
    if (samples < 2) throw InvalidArgument("support surface needs at least two samples");
    SupportSurface s;
    s.kind_ = Kind::Sphere;
    s.center_ = center;
    s.axes_ = {radius, radius, radius};
    for (const Vec3& u : spiral_points(samples)) {
        s.points_.push_back(center + radius * u);
        s.normals_.push_back(u);
    }
    s.spacing_ = mean_spacing(4.0 * kPi * radius * radius, s.points_.size());
    return s;
}

SupportSurface SupportSurface::ellipsoid(double a, double b, double c, int samples)
{
    if (!(a > 0.0 && b > 0.0 && c > 0.0)) throw InvalidArgument("ellipsoid semi-axes must be positive");
    if (samples < 2) throw InvalidArgument("support surface needs at least two samples");
    SupportSurface s;
    s.kind_ = Kind::Ellipsoid;
    s.axes_ = {a, b, c};
    for (const Vec3& u : spiral_points(samples)) {
        const Vec3 x{a * u.x, b * u.y, c * u.z};
        s.points_.push_back(x);
        s.normals_.push_back(s.normal_at(x));
    }
    // Knud Thomsen's approximation of the ellipsoid area, adequate for spacing.
    const double p = 1.6075;
    const double area = 4.0 * kPi *
                        std::pow((std::pow(a * b, p) + std::pow(a * c, p) + std::pow(b * c, p)) / 3.0, 1.0 / p);
    s.spacing_ = mean_spacing(area, s.points_.size());
    return s;
}

SupportSurface SupportSurface::point_cloud(std::vector<Vec3> points, std::vector<Vec3> normals)
{
    if (points.size() != normals.size()) throw InvalidArgument("support point cloud: points and normals differ in size");
    if (points.size() < 2) throw InvalidArgument("support surface needs at least two samples");
    SupportSurface s;
    s.kind_ = Kind::PointCloud;
    for (Vec3& n : normals) {
        if (!(norm(n) > 0.0) || !is_finite(n)) throw InvalidArgument("support point cloud: zero or non-finite normal");
        n = normalized(n);
    }
    for (const Vec3& p : points) {
        if (!is_finite(p)) throw InvalidArgument("support point cloud: non-finite point");
    }
    s.points_ = std::move(points);
    s.normals_ = std::move(normals);
    // Mean nearest-neighbour distance.
    double total = 0.0;
    for (std::size_t i = 0; i < s.points_.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < s.points_.size(); ++j) {
            if (j != i) best = std::min(best, norm(s.points_[i] - s.points_[j]));
        }
        total += best;
    }
    s.spacing_ = total / static_cast<double>(s.points_.size());
    return s;
}

Vec3 SupportSurface::normal_at(const Vec3& x) const
{
    switch (kind_) {
    case Kind::Sphere: return normalized(x - center_);
    case Kind::Ellipsoid:
        return normalized(Vec3{x.x / (axes_.x * axes_.x), x.y / (axes_.y * axes_.y), x.z / (axes_.z * axes_.z)});
    case Kind::PointCloud: break;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (norm2(points_[i] - x) < norm2(points_[best] - x)) best = i;
    }
    return normals_[best];
}

double SupportSurface::level(const Vec3& x) const
{
    switch (kind_) {
    case Kind::Sphere: return norm(x - center_) - axes_.x;
    case Kind::Ellipsoid: return norm(Vec3{x.x / axes_.x, x.y / axes_.y, x.z / axes_.z}) - 1.0;
    case Kind::PointCloud: break;
    }
    throw InvalidArgument("level function needs an analytic support surface");
}

double SupportSurface::normal_curvature(const Vec3& x, const Vec3& d) const
{
    switch (kind_) {
    case Kind::Sphere: return 1.0 / axes_.x;
    case Kind::Ellipsoid: {
        const Vec3 inv{1.0 / (axes_.x * axes_.x), 1.0 / (axes_.y * axes_.y), 1.0 / (axes_.z * axes_.z)};
        const double g = norm(Vec3{x.x * inv.x, x.y * inv.y, x.z * inv.z});
        const Vec3 t = normalized(reject(d, normal_at(x)));
        return (t.x * t.x * inv.x + t.y * t.y * inv.y + t.z * t.z * inv.z) / g;
    }
    case Kind::PointCloud: break;
    }
    throw InvalidArgument("normal curvature needs an analytic support surface");
}

double SupportSurface::max_principal_curvature(const Vec3& x) const
{
    switch (kind_) {
    case Kind::Sphere: return 1.0 / axes_.x;
    case Kind::Ellipsoid: {
        const Vec3 inv{1.0 / (axes_.x * axes_.x), 1.0 / (axes_.y * axes_.y), 1.0 / (axes_.z * axes_.z)};
        const double g = norm(Vec3{x.x * inv.x, x.y * inv.y, x.z * inv.z});
        return tangent_eigen(inv, normal_at(x), g).first;
    }
    case Kind::PointCloud: break;
    }
    throw InvalidArgument("principal curvature needs an analytic support surface");
}

double SupportSurface::curvature_bound() const
{
    if (!analytic()) throw InvalidArgument("curvature bound needs an analytic support surface");
    const double ax[3] = {axes_.x, axes_.y, axes_.z};
    double k = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i != j) k = std::max(k, ax[i] / (ax[j] * ax[j]));
        }
    }
    return k;
}

std::string SupportSurface::describe() const
{
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
    case Kind::Sphere: os << "sphere(center=" << center_.x << ',' << center_.y << ',' << center_.z << ";radius=" << axes_.x << ')'; break;
    case Kind::Ellipsoid: os << "ellipsoid(" << axes_.x << ',' << axes_.y << ',' << axes_.z << ')'; break;
    case Kind::PointCloud: os << "point-cloud(" << points_.size() << ')'; break;
    }
    return os.str();
}

double z_kernel(const Vec3& x, const Vec3& gamma_x, const Vec3& y)
{
    const Vec3 d = x - y;
    const double d2 = norm2(d);
    if (!(d2 > 0.0)) throw InvalidArgument("ball curvature kernel needs distinct points");
    return 2.0 * dot(d, gamma_x) / d2;
}

namespace {

// Maximizes Z(x, y) over y on an analytic surface, starting from y0, by
// Newton steps in the angular parameters of y with difference derivatives.
std::pair<double, Vec3> polish_pair(const Vec3& x, const Vec3& gx, const Vec3& y0,
                                    const Vec3& axes, const Vec3& center)
{
    auto point = [&](double th, double ph) {
        return Vec3{center.x + axes.x * std::sin(th) * std::cos(ph), center.y + axes.y * std::sin(th) * std::sin(ph),
                    center.z + axes.z * std::cos(th)};
    };
    const Vec3 u{(y0.x - center.x) / axes.x, (y0.y - center.y) / axes.y, (y0.z - center.z) / axes.z};
    double th = std::acos(std::clamp(u.z / norm(u), -1.0, 1.0));
    double ph = std::atan2(u.y, u.x);
    auto f = [&](double a, double b) {
        const Vec3 y = point(a, b);
        const double d2 = norm2(x - y);
        return d2 > 1e-20 ? z_kernel(x, gx, y) : -std::numeric_limits<double>::infinity();
    };
    double best = f(th, ph);
    const double e = 1e-5;
    for (int it = 0; it < 30; ++it) {
        const double f0 = best;
        const double ft = (f(th + e, ph) - f(th - e, ph)) / (2 * e);
        const double fp = (f(th, ph + e) - f(th, ph - e)) / (2 * e);
        const double ftt = (f(th + e, ph) - 2 * f0 + f(th - e, ph)) / (e * e);
        const double fpp = (f(th, ph + e) - 2 * f0 + f(th, ph - e)) / (e * e);
        const double ftp = (f(th + e, ph + e) - f(th + e, ph - e) - f(th - e, ph + e) + f(th - e, ph - e)) / (4 * e * e);
        const double det = ftt * fpp - ftp * ftp;
        double dt = 0.0, dp = 0.0;
        if (ftt < 0.0 && det > 0.0) {
            dt = -(fpp * ft - ftp * fp) / det;
            dp = -(ftt * fp - ftp * ft) / det;
        } else {
            dt = 1e-2 * ft;
            dp = 1e-2 * fp;
        }
        bool improved = false;
        for (double step = 1.0; step > 1e-4; step *= 0.5) {
            const double cand = f(th + step * dt, ph + step * dp);
            if (cand > best) {
                th += step * dt;
                ph += step * dp;
                best = cand;
                improved = true;
                break;
            }
        }
        if (!improved || std::abs(best - f0) < 1e-14) break;
    }
    return {best, point(th, ph)};
}

}  // namespace

BallCurvatureReport ball_curvatures(const SupportSurface& S, const std::vector<std::size_t>& subset,
                                    const BallCurvatureOptions& options)
{
    std::vector<std::size_t> idx = subset;
    if (idx.empty()) {
        idx.resize(S.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    }
    if (idx.size() < 2) throw InvalidArgument("ball curvature needs at least two samples");
    for (std::size_t i : idx) {
        if (i >= S.size()) throw InvalidArgument("ball curvature subset index out of range");
    }
    const std::size_t n = idx.size();
    BallCurvatureReport rep;
    rep.upper.assign(n, -std::numeric_limits<double>::infinity());
    rep.lower.assign(n, std::numeric_limits<double>::infinity());
    rep.kappa.assign(n, 0.0);
    std::vector<std::size_t> best_y(n, 0);
    rep.exclusion_radius = S.analytic() ? 0.0 : 2.0 * S.sample_spacing();
    const double excl2 = rep.exclusion_radius * rep.exclusion_radius;
    const auto& P = S.points();
    const auto& N = S.normals();

    parallel_blocks(n, 16, [&](std::size_t b, std::size_t e) {
        for (std::size_t a = b; a < e; ++a) {
            const Vec3& x = P[idx[a]];
            const Vec3& g = N[idx[a]];
            double hi = -std::numeric_limits<double>::infinity();
            double lo = std::numeric_limits<double>::infinity();
            std::size_t arg = a;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == a) continue;
                const Vec3 d = x - P[idx[c]];
                const double d2 = norm2(d);
                if (d2 <= excl2 || d2 == 0.0) continue;
                const double z = 2.0 * dot(d, g) / d2;
                if (z > hi) {
                    hi = z;
                    arg = c;
                }
                lo = std::min(lo, z);
            }
            if (S.analytic() && options.diagonal_limit) {
                // Principal curvatures bound the normal curvature from both sides.
                const double kmax = S.max_principal_curvature(x);
                const Vec3 helper = std::abs(g.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
                const Vec3 e1 = normalized(reject(helper, g));
                const Vec3 e2 = cross(g, e1);
                const double k11 = S.normal_curvature(x, e1);
                const double k22 = S.normal_curvature(x, e2);
                const double k12 = S.normal_curvature(x, normalized(e1 + e2));
                const double b12 = k12 - 0.5 * (k11 + k22);
                const double kmin = 0.5 * (k11 + k22) - std::sqrt(0.25 * (k11 - k22) * (k11 - k22) + b12 * b12);
                if (kmax > hi) {
                    hi = kmax;
                    arg = a;
                }
                lo = std::min(lo, kmin);
            }
            rep.upper[a] = hi;
            rep.lower[a] = lo;
            best_y[a] = arg;
        }
    });

    rep.sup_upper = -std::numeric_limits<double>::infinity();
    rep.inf_lower = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n; ++a) {
        rep.kappa[a] = std::max(rep.upper[a], -rep.lower[a]);
        if (rep.upper[a] > rep.sup_upper) {
            rep.sup_upper = rep.upper[a];
            rep.argmax_x = idx[a];
            rep.argmax_y = idx[best_y[a]];
        }
        rep.inf_lower = std::min(rep.inf_lower, rep.lower[a]);
    }

    if (options.polish && S.analytic() && rep.argmax_x != rep.argmax_y) {
        const Vec3& x = P[rep.argmax_x];
        const auto [z, y] = polish_pair(x, N[rep.argmax_x], P[rep.argmax_y], S.axes(), S.center());
        (void)y;
        if (z > rep.sup_upper) {
            rep.sup_upper = z;
            for (std::size_t a = 0; a < n; ++a) {
                if (idx[a] == rep.argmax_x) {
                    rep.upper[a] = z;
                    rep.kappa[a] = std::max(z, -rep.lower[a]);
                }
            }
        }
    }
    return rep;
}

namespace {

std::size_t find_boundary_index(const TriangleMesh& mesh, const BoundaryField& B, const Vec3& x0)
{
    const double tol = 1e-9 * mesh.median_edge_length();
    for (std::size_t k = 0; k < B.size(); ++k) {
        if (norm(mesh.vertex(B.vertices[k]) - x0) <= tol) return k;
    }
    throw InvalidArgument("center must be a boundary vertex of the mesh");
}

}  // namespace

CurvatureIdentity boundary_curvature_identity(const TriangleMesh& mesh, const MeanCurvatureField& H,
                                              const BoundaryField& B, const SupportSurface& S, const Vec3& x0)
{
    const std::size_t k0 = find_boundary_index(mesh, B, x0);
    CurvatureIdentity id;
    id.density = cone_density(mesh, x0);
    id.defect_integral = normal_defect_integral(mesh, H, x0, 2.0 * mesh.median_edge_length());
    id.h2_term = integral_h2(mesh, H) / (8.0 * kPi);
    double zsum = 0.0;
    for (std::size_t k = 0; k < B.size(); ++k) {
        const Vec3& x = mesh.vertex(B.vertices[k]);
        if (k == k0) continue;
        zsum += B.weights[k] * z_kernel(x, S.normal_at(x), x0);
    }
    // The self cell carries the diagonal limit of Z along the boundary.
    double diag = 0.0;
    if (S.analytic()) {
        diag = S.normal_curvature(x0, B.tangent[k0]);
    } else {
        const std::size_t m = B.size();
        const Vec3& xp = mesh.vertex(B.vertices[(k0 + m - 1) % m]);
        const Vec3& xn = mesh.vertex(B.vertices[(k0 + 1) % m]);
        diag = 0.5 * (z_kernel(xp, S.normal_at(xp), x0) + z_kernel(xn, S.normal_at(xn), x0));
    }
    zsum += B.weights[k0] * diag;
    id.z_term = zsum / (2.0 * kPi);
    id.lhs = 2.0 * id.density + 2.0 / kPi * id.defect_integral;
    id.rhs = id.h2_term + id.z_term;
    id.residual = id.lhs - id.rhs;
    return id;
}

SupportAdmissibility support_admissibility(const TriangleMesh& mesh, const BoundaryField& B,
                                           const SupportSurface& S, double angle_tolerance_deg)
{
    SupportAdmissibility a;
    a.angle_tolerance_deg = angle_tolerance_deg;
    for (std::size_t k = 0; k < B.size(); ++k) {
        const Vec3& x = mesh.vertex(B.vertices[k]);
        if (S.analytic()) a.max_level_defect = std::max(a.max_level_defect, std::abs(S.level(x)));
        const double c = std::clamp(dot(S.normal_at(x), B.conormal[k]), -1.0, 1.0);
        a.max_angle_deg = std::max(a.max_angle_deg, std::acos(c) * 180.0 / kPi);
    }
    return a;
}

SupportInequality support_inequality_check(const TriangleMesh& mesh, const MeanCurvatureField& H,
                                           const BoundaryField& B, const SupportSurface& S, double tol)
{
    SupportInequality out;
    out.quarter_h2 = 0.25 * integral_h2(mesh, H);
    out.boundary_length = B.length;
    const std::size_t m = B.size();
    std::vector<double> kbar(m, -std::numeric_limits<double>::infinity());
    parallel_blocks(m, 16, [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
            const Vec3& x = mesh.vertex(B.vertices[k]);
            const Vec3 g = S.normal_at(x);
            double hi = S.analytic() ? S.normal_curvature(x, B.tangent[k]) : -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < m; ++j) {
                if (j == k) continue;
                hi = std::max(hi, z_kernel(x, g, mesh.vertex(B.vertices[j])));
            }
            kbar[k] = hi;
        }
    });
    for (std::size_t k = 0; k < m; ++k) out.kappa_integral += B.weights[k] * kbar[k];
    const double rhs = out.quarter_h2 + out.kappa_integral;
    out.ball_curvature = {"support_ball_curvature", 2.0 * kPi <= rhs + tol, rhs, 2.0 * kPi, tol};
    if (S.analytic()) {
        out.curvature_bound = S.curvature_bound();
        const double r2 = out.quarter_h2 + out.curvature_bound * out.boundary_length;
        out.convex_bound = Verdict{"support_convex_bound", 2.0 * kPi <= r2 + tol, r2, 2.0 * kPi, tol};
    }
    return out;
}

}  // namespace fbmono
