#pragma once

#include "fbmono/curve.hpp"
#include "fbmono/mesh.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>

namespace fbmono {

enum class ShapeKind {
    FlatDisk,
    SphericalCap,
    PerturbedCap,
    TwoDisks,
    EllipticDisk,
    Sphere,
    Circle,
    Ellipse,
    Trefoil,
    FourierRandom,
    PerturbedCircle,
};

std::string_view to_string(ShapeKind kind);
std::optional<ShapeKind> parse_shape_kind(std::string_view name);
bool is_surface_kind(ShapeKind kind);

/// Fixture description. Unused parameters are ignored by a given kind.
///
/// For disk-type surfaces `resolution` is the minimum number of boundary
/// vertices (rounded up to a multiple of 6). For curves it is the vertex
/// count. For the sphere it is the subdivision frequency of an icosahedron.
struct ShapeSpec {
    ShapeKind kind = ShapeKind::FlatDisk;
    int resolution = 64;
    double r = 1.0;          // cap sphere radius, circle radius, sphere radius
    double a = 2.0;          // ellipse semi-axes
    double b = 1.0;
    double amplitude = 0.0;  // perturbed cap / perturbed circle
    int mode = 3;
    double phase = 0.0;
    double tilt = 0.0;       // angle between the sheets of the two-disk fixture
    std::uint64_t seed = 0;

    /// Throws InvalidArgument naming the offending parameter.
    void validate() const;
};

using Shape = std::variant<TriangleMesh, ClosedPolyline>;

Shape generate_shape(const ShapeSpec& spec);

// Direct generators. Free-boundary surfaces have their boundary exactly on
// the unit sphere up to rounding.
TriangleMesh make_flat_disk(int resolution);
TriangleMesh make_spherical_cap(double r, int resolution);
TriangleMesh make_perturbed_cap(double r, int resolution, double amplitude, int mode, double phase);
TriangleMesh make_two_disks(int resolution, double tilt);
TriangleMesh make_elliptic_disk(double a, double b, int resolution);
TriangleMesh make_sphere(double radius, int frequency);

ClosedPolyline make_circle(double radius, int n);
ClosedPolyline make_ellipse(double a, double b, int n);
ClosedPolyline make_trefoil(int n);
ClosedPolyline make_fourier_random(int n, std::uint64_t seed);
ClosedPolyline make_perturbed_circle(int n, double amplitude, int mode);

/// Exact area of the free-boundary spherical cap of sphere radius r.
double spherical_cap_area(double r);
/// Radius of the boundary circle of that cap.
double spherical_cap_boundary_radius(double r);

/// Portable uniform [0,1) stream from a 64-bit seed.
class SeededUniform {
public:
    explicit SeededUniform(std::uint64_t seed) : engine_(seed) {}
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace fbmono
