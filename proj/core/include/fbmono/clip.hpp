#pragma once

#include "fbmono/mesh.hpp"
#include "fbmono/parallel.hpp"
#include "fbmono/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace fbmono {

/// One spherical side condition: |x - center| < radius (inside) or >= radius.
struct SphereSide {
    Vec3 center;
    double radius = 0.0;
    bool inside = true;
};

/// Intersection of at most two sphere side conditions: a ball, the
/// complement of a ball, or a spherical shell.
struct Region {
    std::array<SphereSide, 2> sides{};
    int count = 0;

    static Region ball(const Vec3& c, double r) { return {{SphereSide{c, r, true}, SphereSide{}}, 1}; }
    static Region exterior(const Vec3& c, double r) { return {{SphereSide{c, r, false}, SphereSide{}}, 1}; }
    /// inner <= |x - c| < outer
    static Region shell(const Vec3& c, double inner, double outer)
    {
        return {{SphereSide{c, outer, true}, SphereSide{c, inner, false}}, 2};
    }
};

/// Controls the recursive 4-way subdivision of faces cut by a sphere.
///
/// Fragments entirely inside or outside are classified exactly (vertex
/// distances and the exact point-triangle distance). Cut fragments are split
/// until their diameter is at most `leaf_fraction` times the cutting radius,
/// or their area drops below `area_tolerance`; leaves are clipped against the
/// sphere linearized through the leaf vertices.
struct ClipOptions {
    double leaf_fraction = 5e-3;
    double area_tolerance = 0.0;  // absolute; 0 means 1e-9 * total mesh area
    int max_depth = 14;
};

/// Point handed to integrands: face index, barycentric weights, position.
struct SurfacePoint {
    int face;
    std::array<double, 3> bary;
    Vec3 x;
};

/// Distance from p to the closed triangle abc.
double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

namespace detail {

enum class Side { Inside, Outside, Cut };

struct Fragment {
    std::array<std::array<double, 3>, 3> bary;  // corner barycentrics w.r.t. the face
    std::array<Vec3, 3> x;
};

Side classify(const SphereSide& s, const Fragment& frag);

/// Clips the fragment against the linearized side conditions that are cut,
/// returning a convex polygon (possibly empty) as barycentric/position pairs.
struct PolyVertex {
    std::array<double, 3> bary;
    Vec3 x;
};

int clip_leaf(const Region& region, const std::array<Side, 2>& sides, const Fragment& frag,
              std::array<PolyVertex, 9>& poly);

template <std::size_t K, typename F>
void integrate_triangle(int face, const std::array<double, 3>& b0, const std::array<double, 3>& b1,
                        const std::array<double, 3>& b2, const Vec3& x0, const Vec3& x1, const Vec3& x2,
                        F& integrand, std::array<double, K>& acc)
{
    const double area = 0.5 * norm(cross(x1 - x0, x2 - x0));
    if (!(area > 0.0)) return;
    for (const auto& q : kTriangleRule7) {
        SurfacePoint p;
        p.face = face;
        for (int k = 0; k < 3; ++k) p.bary[k] = q.bary[0] * b0[k] + q.bary[1] * b1[k] + q.bary[2] * b2[k];
        p.x = barycentric_point(q.bary, x0, x1, x2);
        const std::array<double, K> v = integrand(p);
        for (std::size_t k = 0; k < K; ++k) acc[k] += q.weight * area * v[k];
    }
}

template <std::size_t K, typename F>
void integrate_fragment(const Region& region, int face, const Fragment& frag, int depth,
                        const ClipOptions& opt, double area_tol, F& integrand, std::array<double, K>& acc)
{
    std::array<Side, 2> sides{Side::Inside, Side::Inside};
    bool cut = false;
    double cut_radius = 0.0;
    for (int s = 0; s < region.count; ++s) {
        sides[static_cast<std::size_t>(s)] = classify(region.sides[static_cast<std::size_t>(s)], frag);
        if (sides[static_cast<std::size_t>(s)] == Side::Outside) return;
        if (sides[static_cast<std::size_t>(s)] == Side::Cut) {
            const double r = region.sides[static_cast<std::size_t>(s)].radius;
            cut_radius = cut ? std::min(cut_radius, r) : r;
            cut = true;
        }
    }
    if (!cut) {
        integrate_triangle<K>(face, frag.bary[0], frag.bary[1], frag.bary[2], frag.x[0], frag.x[1], frag.x[2],
                              integrand, acc);
        return;
    }
    const double diam = std::max({norm(frag.x[1] - frag.x[0]), norm(frag.x[2] - frag.x[1]), norm(frag.x[0] - frag.x[2])});
    const double area = 0.5 * norm(cross(frag.x[1] - frag.x[0], frag.x[2] - frag.x[0]));
    if (depth >= opt.max_depth || diam <= opt.leaf_fraction * cut_radius || area <= area_tol) {
        std::array<PolyVertex, 9> poly;
        const int n = clip_leaf(region, sides, frag, poly);
        for (int i = 1; i + 1 < n; ++i) {
            integrate_triangle<K>(face, poly[0].bary, poly[static_cast<std::size_t>(i)].bary,
                                  poly[static_cast<std::size_t>(i) + 1].bary, poly[0].x,
                                  poly[static_cast<std::size_t>(i)].x, poly[static_cast<std::size_t>(i) + 1].x,
                                  integrand, acc);
        }
        return;
    }
    auto mid = [&](int i, int j) {
        std::array<double, 3> m{};
        for (int k = 0; k < 3; ++k) m[k] = 0.5 * (frag.bary[static_cast<std::size_t>(i)][k] + frag.bary[static_cast<std::size_t>(j)][k]);
        return std::make_pair(m, 0.5 * (frag.x[static_cast<std::size_t>(i)] + frag.x[static_cast<std::size_t>(j)]));
    };
    const auto [b01, x01] = mid(0, 1);
    const auto [b12, x12] = mid(1, 2);
    const auto [b20, x20] = mid(2, 0);
    const std::array<Fragment, 4> children{{
        {{frag.bary[0], b01, b20}, {frag.x[0], x01, x20}},
        {{b01, frag.bary[1], b12}, {x01, frag.x[1], x12}},
        {{b20, b12, frag.bary[2]}, {x20, x12, frag.x[2]}},
        {{b01, b12, b20}, {x01, x12, x20}},
    }};
    for (const Fragment& c : children) integrate_fragment<K>(region, face, c, depth + 1, opt, area_tol, integrand, acc);
}

/// Conservative test whether a face can meet the region at all.
bool face_may_intersect(const Region& region, const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace detail

/// Integrates a K-valued integrand over (mesh ∩ region) face by face with a
/// fixed reduction order. `integrand(const SurfacePoint&)` returns
/// std::array<double, K>.
template <std::size_t K, typename F>
std::array<double, K> integrate_region(const TriangleMesh& mesh, const Region& region, F integrand,
                                       const ClipOptions& opt = {})
{
    const double area_tol = opt.area_tolerance > 0.0 ? opt.area_tolerance : 1e-9 * mesh.total_area();
    struct Acc {
        std::array<double, K> v{};
        Acc& operator+=(const Acc& o)
        {
            for (std::size_t k = 0; k < K; ++k) v[k] += o.v[k];
            return *this;
        }
    };
    const Acc total = deterministic_sum<Acc>(static_cast<std::size_t>(mesh.face_count()), [&](std::size_t fi) {
        const int f = static_cast<int>(fi);
        const Face& t = mesh.face(f);
        const Vec3& a = mesh.vertex(t[0]);
        const Vec3& b = mesh.vertex(t[1]);
        const Vec3& c = mesh.vertex(t[2]);
        Acc acc;
        if (!detail::face_may_intersect(region, a, b, c)) return acc;
        const detail::Fragment root{{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}, {a, b, c}};
        F local = integrand;
        detail::integrate_fragment<K>(region, f, root, 0, opt, area_tol, local, acc.v);
        return acc;
    });
    return total.v;
}

/// Area of mesh ∩ B_r(center).
double ball_mass(const TriangleMesh& mesh, const Vec3& center, double r, const ClipOptions& opt = {});

}  // namespace fbmono
