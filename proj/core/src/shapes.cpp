#include "fbmono/shapes.hpp"

#include "fbmono/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <tuple>

namespace fbmono {

namespace {

constexpr double kPi = std::numbers::pi;

struct KindName {
    ShapeKind kind;
    std::string_view name;
};

constexpr std::array<KindName, 11> kKindNames{{
    {ShapeKind::FlatDisk, "flat-disk"},
    {ShapeKind::SphericalCap, "spherical-cap"},
    {ShapeKind::PerturbedCap, "perturbed-cap"},
    {ShapeKind::TwoDisks, "two-disks"},
    {ShapeKind::EllipticDisk, "elliptic-disk"},
    {ShapeKind::Sphere, "sphere"},
    {ShapeKind::Circle, "circle"},
    {ShapeKind::Ellipse, "ellipse"},
    {ShapeKind::Trefoil, "trefoil"},
    {ShapeKind::FourierRandom, "fourier-random"},
    {ShapeKind::PerturbedCircle, "perturbed-circle"},
}};

int ring_count(int resolution) { return std::max(1, (resolution + 5) / 6); }

/// Concentric-ring triangulation of the unit disk: ring k carries 6k vertices.
/// `place(s, theta)` maps normalized radius s in [0,1] and angle to R^3.
template <typename Place>
TriangleMesh ring_mesh(int resolution, Place place)
{
    const int rings = ring_count(resolution);
    std::vector<Vec3> verts;
    verts.push_back(place(0.0, 0.0));
    std::vector<int> ring_start{0};
    for (int k = 1; k <= rings; ++k) {
        ring_start.push_back(static_cast<int>(verts.size()));
        const int count = 6 * k;
        const double s = static_cast<double>(k) / rings;
        for (int j = 0; j < count; ++j) verts.push_back(place(s, 2.0 * kPi * j / count));
    }

    std::vector<Face> faces;
    for (int k = 1; k <= rings; ++k) {
        const int inner_count = 6 * (k - 1);
        const int outer_count = 6 * k;
        auto inner = [&](int s, int m) {
            if (k == 1) return 0;
            return ring_start[static_cast<std::size_t>(k - 1)] + (s * (k - 1) + m) % inner_count;
        };
        auto outer = [&](int s, int m) {
            return ring_start[static_cast<std::size_t>(k)] + (s * k + m) % outer_count;
        };
        for (int s = 0; s < 6; ++s) {
            for (int m = 0; m < k; ++m) faces.push_back({outer(s, m), outer(s, m + 1), inner(s, m)});
            for (int m = 0; m + 1 < k; ++m) {
                faces.push_back({inner(s, m), outer(s, m + 1), inner(s, m + 1)});
            }
        }
    }
    return TriangleMesh(std::move(verts), std::move(faces));
}

Vec3 pin_to_unit_sphere(Vec3 v) { return v / norm(v); }

struct CapFrame {
    double r;
    double center_height;
    double max_polar;
};

CapFrame cap_frame(double r)
{
    const double h = std::sqrt(1.0 + r * r);
    return {r, h, std::acos(r / h)};
}

Vec3 cap_point(const CapFrame& cf, double polar, double theta)
{
    return {cf.r * std::sin(polar) * std::cos(theta), cf.r * std::sin(polar) * std::sin(theta),
            cf.center_height - cf.r * std::cos(polar)};
}

}  // namespace

std::string_view to_string(ShapeKind kind)
{
    for (const auto& kn : kKindNames) {
        if (kn.kind == kind) return kn.name;
    }
    return "unknown";
}

std::optional<ShapeKind> parse_shape_kind(std::string_view name)
{
    for (const auto& kn : kKindNames) {
        if (kn.name == name) return kn.kind;
    }
    return std::nullopt;
}

bool is_surface_kind(ShapeKind kind)
{
    switch (kind) {
    case ShapeKind::FlatDisk:
    case ShapeKind::SphericalCap:
    case ShapeKind::PerturbedCap:
    case ShapeKind::TwoDisks:
    case ShapeKind::EllipticDisk:
    case ShapeKind::Sphere: return true;
    default: return false;
    }
}

void ShapeSpec::validate() const
{
    auto fail = [](const std::string& what) { throw InvalidArgument(what); };
    switch (kind) {
    case ShapeKind::FlatDisk:
    case ShapeKind::TwoDisks:
        if (resolution < 6) fail("resolution must be at least 6 for disk surfaces");
        break;
    case ShapeKind::SphericalCap:
    case ShapeKind::PerturbedCap:
        if (resolution < 6) fail("resolution must be at least 6 for cap surfaces");
        if (!(r > 0.0) || !std::isfinite(r)) fail("r must be positive");
        if (kind == ShapeKind::PerturbedCap && mode < 1) fail("mode must be at least 1");
        if (!std::isfinite(amplitude)) fail("amplitude must be finite");
        break;
    case ShapeKind::EllipticDisk:
    case ShapeKind::Ellipse:
        if (resolution < (kind == ShapeKind::Ellipse ? 8 : 6)) fail("resolution below minimum");
        if (!(a > 0.0) || !(b > 0.0)) fail("semi-axes a and b must be positive");
        break;
    case ShapeKind::Sphere:
        if (resolution < 1) fail("resolution (subdivision frequency) must be at least 1");
        if (!(r > 0.0)) fail("r must be positive");
        break;
    case ShapeKind::Circle:
        if (resolution < 8) fail("resolution must be at least 8 for curves");
        if (!(r > 0.0)) fail("r must be positive");
        break;
    case ShapeKind::Trefoil:
    case ShapeKind::FourierRandom:
        if (resolution < 8) fail("resolution must be at least 8 for curves");
        break;
    case ShapeKind::PerturbedCircle:
        if (resolution < 8) fail("resolution must be at least 8 for curves");
        if (!(amplitude >= 0.0 && amplitude < 1.0)) fail("amplitude must lie in [0, 1)");
        if (mode < 1) fail("mode must be at least 1");
        break;
    }
}

Shape generate_shape(const ShapeSpec& spec)
{
    spec.validate();
    switch (spec.kind) {
    case ShapeKind::FlatDisk: return make_flat_disk(spec.resolution);
    case ShapeKind::SphericalCap: return make_spherical_cap(spec.r, spec.resolution);
    case ShapeKind::PerturbedCap:
        return make_perturbed_cap(spec.r, spec.resolution, spec.amplitude, spec.mode, spec.phase);
    case ShapeKind::TwoDisks: return make_two_disks(spec.resolution, spec.tilt);
    case ShapeKind::EllipticDisk: return make_elliptic_disk(spec.a, spec.b, spec.resolution);
    case ShapeKind::Sphere: return make_sphere(spec.r, spec.resolution);
    case ShapeKind::Circle: return make_circle(spec.r, spec.resolution);
    case ShapeKind::Ellipse: return make_ellipse(spec.a, spec.b, spec.resolution);
    case ShapeKind::Trefoil: return make_trefoil(spec.resolution);
    case ShapeKind::FourierRandom: return make_fourier_random(spec.resolution, spec.seed);
    case ShapeKind::PerturbedCircle:
        return make_perturbed_circle(spec.resolution, spec.amplitude, spec.mode);
    }
    throw InvalidArgument("unknown shape kind");
}

TriangleMesh make_flat_disk(int resolution)
{
    return ring_mesh(resolution, [](double s, double theta) {
        const Vec3 p{s * std::cos(theta), s * std::sin(theta), 0.0};
        return s == 1.0 ? pin_to_unit_sphere(p) : p;
    });
}

TriangleMesh make_spherical_cap(double r, int resolution)
{
    return make_perturbed_cap(r, resolution, 0.0, 1, 0.0);
}

TriangleMesh make_perturbed_cap(double r, int resolution, double amplitude, int mode, double phase)
{
    if (!(r > 0.0)) throw InvalidArgument("r must be positive");
    const CapFrame cf = cap_frame(r);
    const Vec3 center{0.0, 0.0, cf.center_height};
    return ring_mesh(resolution, [&](double s, double theta) {
        Vec3 p = cap_point(cf, s * cf.max_polar, theta);
        if (s == 1.0) return pin_to_unit_sphere(p);
        if (amplitude != 0.0) {
            // s^m sin(m theta) is smooth at the apex; (1 - s^2)^3 fixes the
            // boundary, its tangent plane and curvature.
            const double collar = 1.0 - s * s;
            const double envelope = std::pow(s, mode) * collar * collar * collar;
            const Vec3 n = (p - center) / r;
            p += amplitude * envelope * std::sin(mode * theta + phase) * n;
        }
        return p;
    });
}

TriangleMesh make_two_disks(int resolution, double tilt)
{
    const TriangleMesh disk = make_flat_disk(resolution);
    const TriangleMesh other = disk.transformed(rotation({1, 0, 0}, tilt), 1.0, {});
    return TriangleMesh::disjoint_union(disk, other);
}

TriangleMesh make_elliptic_disk(double a, double b, int resolution)
{
    return ring_mesh(resolution, [&](double s, double theta) {
        return Vec3{a * s * std::cos(theta), b * s * std::sin(theta), 0.0};
    });
}

TriangleMesh make_sphere(double radius, int frequency)
{
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    const std::array<Vec3, 12> ico{{{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
                                    {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
                                    {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}}};
    const std::array<Face, 20> ico_faces{{{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
                                          {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                          {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
                                          {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}}};
    const int n = frequency;
    std::vector<Vec3> verts;
    std::map<std::tuple<long long, long long, long long>, int> index;
    auto vertex_id = [&](const Vec3& p) {
        const Vec3 q = normalized(p);
        const auto key = std::make_tuple(std::llround(q.x * 1e9), std::llround(q.y * 1e9),
                                         std::llround(q.z * 1e9));
        auto [it, inserted] = index.emplace(key, static_cast<int>(verts.size()));
        if (inserted) verts.push_back(radius * q);
        return it->second;
    };
    std::vector<Face> faces;
    for (const Face& f : ico_faces) {
        const Vec3 A = ico[static_cast<std::size_t>(f[0])];
        const Vec3 B = ico[static_cast<std::size_t>(f[1])];
        const Vec3 C = ico[static_cast<std::size_t>(f[2])];
        auto grid = [&](int i, int j) {
            return vertex_id(A + (B - A) * (static_cast<double>(i) / n) +
                             (C - A) * (static_cast<double>(j) / n));
        };
        for (int i = 0; i < n; ++i) {
            for (int j = 0; i + j < n; ++j) {
                faces.push_back({grid(i, j), grid(i + 1, j), grid(i, j + 1)});
                if (i + j + 1 < n) faces.push_back({grid(i + 1, j), grid(i + 1, j + 1), grid(i, j + 1)});
            }
        }
    }
    return TriangleMesh(std::move(verts), std::move(faces));
}

double spherical_cap_area(double r)
{
    return 2.0 * kPi * r * r * (1.0 - r / std::sqrt(1.0 + r * r));
}

double spherical_cap_boundary_radius(double r) { return r / std::sqrt(1.0 + r * r); }

ClosedPolyline make_circle(double radius, int n)
{
    std::vector<Vec3> pts;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * i / n;
        pts.push_back({radius * std::cos(t), radius * std::sin(t), 0.0});
    }
    return ClosedPolyline(std::move(pts));
}

ClosedPolyline make_ellipse(double a, double b, int n)
{
    std::vector<Vec3> pts;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * i / n;
        pts.push_back({a * std::cos(t), b * std::sin(t), 0.0});
    }
    return ClosedPolyline(std::move(pts));
}

ClosedPolyline make_trefoil(int n)
{
    // (2,3) torus knot on the torus with radii 2 and 1
    std::vector<Vec3> pts;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * i / n;
        const double rho = 2.0 + std::cos(3.0 * t);
        pts.push_back({rho * std::cos(2.0 * t), rho * std::sin(2.0 * t), std::sin(3.0 * t)});
    }
    return ClosedPolyline(std::move(pts));
}

ClosedPolyline make_fourier_random(int n, std::uint64_t seed)
{
    constexpr int kModes = 5;
    constexpr double kAmplitude = 0.25;
    SeededUniform rng(seed);
    std::array<Vec3, kModes + 1> cos_coef{};
    std::array<Vec3, kModes + 1> sin_coef{};
    for (int k = 2; k <= kModes; ++k) {
        for (int c = 0; c < 3; ++c) {
            cos_coef[static_cast<std::size_t>(k)][c] = rng.uniform(-kAmplitude, kAmplitude);
            sin_coef[static_cast<std::size_t>(k)][c] = rng.uniform(-kAmplitude, kAmplitude);
        }
    }
    // coefficients decay like 1/k^2, so |c'| >= 1 - sum_k |coef_k| / k > 0
    std::vector<Vec3> pts;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * i / n;
        Vec3 p{std::cos(t), std::sin(t), 0.0};
        for (int k = 2; k <= kModes; ++k) {
            const double w = 1.0 / (k * k);
            p += w * (std::cos(k * t) * cos_coef[static_cast<std::size_t>(k)] +
                      std::sin(k * t) * sin_coef[static_cast<std::size_t>(k)]);
        }
        pts.push_back(p);
    }
    return ClosedPolyline(std::move(pts));
}

ClosedPolyline make_perturbed_circle(int n, double amplitude, int mode)
{
    std::vector<Vec3> pts;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * i / n;
        const double rho = 1.0 + amplitude * std::sin(mode * t);
        pts.push_back({rho * std::cos(t), rho * std::sin(t), 0.0});
    }
    return ClosedPolyline(std::move(pts));
}

}  // namespace fbmono
