#include "fbmono/curve.hpp"

#include "fbmono/error.hpp"

#include <string>
#include <utility>

namespace fbmono {

ClosedPolyline::ClosedPolyline(std::vector<Vec3> points) : points_(std::move(points))
{
    const int n = size();
    if (n < 3) throw InvalidArgument("closed polyline needs at least 3 vertices");
    std::vector<Vec3> unit_edges(points_.size());
    std::vector<double> lengths(points_.size());
    for (int i = 0; i < n; ++i) {
        if (!is_finite(point(i))) throw ParseError("non-finite curve coordinate");
        const Vec3 e = point(next(i)) - point(i);
        const double l = norm(e);
        if (!(l > 0.0)) {
            throw DegenerateError("curve vertices " + std::to_string(i) + " and " +
                                  std::to_string(next(i)) + " coincide");
        }
        unit_edges[static_cast<std::size_t>(i)] = e / l;
        lengths[static_cast<std::size_t>(i)] = l;
        length_ += l;
    }
    tangents_.resize(points_.size());
    weights_.resize(points_.size());
    for (int i = 0; i < n; ++i) {
        const auto ip = static_cast<std::size_t>(prev(i));
        const auto ii = static_cast<std::size_t>(i);
        const Vec3 t = unit_edges[ip] + unit_edges[ii];
        if (norm(t) < 1e-12) throw DegenerateError("curve reverses at vertex " + std::to_string(i));
        tangents_[ii] = normalized(t);
        weights_[ii] = 0.5 * (lengths[ip] + lengths[ii]);
    }
}

double menger_curvature(const Vec3& a, const Vec3& b, const Vec3& c)
{
    const Vec3 u = a - b;
    const Vec3 v = c - b;
    const double denom = norm(u) * norm(v) * norm(c - a);
    return denom > 0.0 ? 2.0 * norm(cross(u, v)) / denom : 0.0;
}

double ClosedPolyline::menger_curvature(int i) const
{
    return fbmono::menger_curvature(point(prev(i)), point(i), point(next(i)));
}

ClosedPolyline ClosedPolyline::transformed(const Mat3& rot, double scale, const Vec3& shift) const
{
    std::vector<Vec3> pts;
    pts.reserve(points_.size());
    for (const Vec3& p : points_) pts.push_back(scale * (rot * p) + shift);
    return ClosedPolyline(std::move(pts));
}

}  // namespace fbmono
