#include "fbmono/clip.hpp"

namespace fbmono {

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c)
{
    const Vec3 ab = b - a;
    const Vec3 ac = c - a;
    const Vec3 ap = p - a;
    const double d1 = dot(ab, ap);
    const double d2 = dot(ac, ap);
    if (d1 <= 0.0 && d2 <= 0.0) return norm(ap);
    const Vec3 bp = p - b;
    const double d3 = dot(ab, bp);
    const double d4 = dot(ac, bp);
    if (d3 >= 0.0 && d4 <= d3) return norm(bp);
    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return norm(p - (a + (d1 / (d1 - d3)) * ab));
    const Vec3 cp = p - c;
    const double d5 = dot(ab, cp);
    const double d6 = dot(ac, cp);
    if (d6 >= 0.0 && d5 <= d6) return norm(cp);
    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return norm(p - (a + (d2 / (d2 - d6)) * ac));
    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return norm(p - (b + w * (c - b)));
    }
    const double denom = 1.0 / (va + vb + vc);
    const double v = vb * denom;
    const double w = vc * denom;
    return norm(p - (a + v * ab + w * ac));
}

namespace detail {

Side classify(const SphereSide& s, const Fragment& frag)
{
    double dmax = 0.0;
    for (const Vec3& x : frag.x) dmax = std::max(dmax, norm(x - s.center));
    if (dmax < s.radius) return s.inside ? Side::Inside : Side::Outside;
    const double dmin = point_triangle_distance(s.center, frag.x[0], frag.x[1], frag.x[2]);
    if (dmin >= s.radius) return s.inside ? Side::Outside : Side::Inside;
    return Side::Cut;
}

namespace {

// Signed level value, negative where the side condition holds.
double level(const SphereSide& s, const Vec3& x)
{
    const double d = norm(x - s.center) - s.radius;
    return s.inside ? d : -d;
}

}  // namespace

int clip_leaf(const Region& region, const std::array<Side, 2>& sides, const Fragment& frag,
              std::array<PolyVertex, 9>& poly)
{
    int n = 3;
    for (std::size_t i = 0; i < 3; ++i) poly[i] = {frag.bary[i], frag.x[i]};
    // Level values are taken at the leaf corners and interpolated linearly, so
    // every clip plane is the same affine function across the polygon.
    for (int s = 0; s < region.count; ++s) {
        if (sides[static_cast<std::size_t>(s)] != Side::Cut) continue;
        const SphereSide& side = region.sides[static_cast<std::size_t>(s)];
        std::array<double, 3> corner{};
        for (std::size_t i = 0; i < 3; ++i) corner[i] = level(side, frag.x[i]);
        auto value = [&](const PolyVertex& v) {
            // Barycentric coordinates relative to the leaf, recovered from position.
            const Vec3 e1 = frag.x[1] - frag.x[0];
            const Vec3 e2 = frag.x[2] - frag.x[0];
            const Vec3 q = v.x - frag.x[0];
            const double a11 = dot(e1, e1), a12 = dot(e1, e2), a22 = dot(e2, e2);
            const double b1 = dot(q, e1), b2 = dot(q, e2);
            const double det = a11 * a22 - a12 * a12;
            const double u = (a22 * b1 - a12 * b2) / det;
            const double w = (a11 * b2 - a12 * b1) / det;
            return (1.0 - u - w) * corner[0] + u * corner[1] + w * corner[2];
        };
        std::array<PolyVertex, 9> out;
        int m = 0;
        for (int i = 0; i < n; ++i) {
            const PolyVertex& p = poly[static_cast<std::size_t>(i)];
            const PolyVertex& q = poly[static_cast<std::size_t>((i + 1) % n)];
            const double fp = value(p);
            const double fq = value(q);
            if (fp < 0.0) out[static_cast<std::size_t>(m++)] = p;
            if ((fp < 0.0) != (fq < 0.0)) {
                const double t = fp / (fp - fq);
                PolyVertex r;
                for (std::size_t k = 0; k < 3; ++k) r.bary[k] = p.bary[k] + t * (q.bary[k] - p.bary[k]);
                r.x = p.x + t * (q.x - p.x);
                out[static_cast<std::size_t>(m++)] = r;
            }
        }
        poly = out;
        n = m;
        if (n < 3) return 0;
    }
    return n;
}

bool face_may_intersect(const Region& region, const Vec3& a, const Vec3& b, const Vec3& c)
{
    const Vec3 g = (a + b + c) / 3.0;
    const double rad = std::max({norm(a - g), norm(b - g), norm(c - g)});
    for (int s = 0; s < region.count; ++s) {
        const SphereSide& side = region.sides[static_cast<std::size_t>(s)];
        const double d = norm(g - side.center);
        if (side.inside && d - rad >= side.radius) return false;
        if (!side.inside && d + rad < side.radius) return false;
    }
    return true;
}

}  // namespace detail

double ball_mass(const TriangleMesh& mesh, const Vec3& center, double r, const ClipOptions& opt)
{
    if (!(r > 0.0)) return 0.0;
    return integrate_region<1>(mesh, Region::ball(center, r),
                               [](const SurfacePoint&) { return std::array<double, 1>{1.0}; }, opt)[0];
}

}  // namespace fbmono
