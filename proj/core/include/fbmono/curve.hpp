#pragma once

#include "fbmono/vec3.hpp"

#include <span>
#include <vector>

namespace fbmono {

/// Closed polygonal curve with derived per-vertex tangents and arc weights.
///
/// Tangent at vertex i is the normalized sum of the unit vectors of the two
/// incident edges; the arc weight is half the sum of their lengths.
class ClosedPolyline {
public:
    ClosedPolyline() = default;
    explicit ClosedPolyline(std::vector<Vec3> points);

    std::span<const Vec3> points() const { return points_; }
    std::span<const Vec3> tangents() const { return tangents_; }
    std::span<const double> weights() const { return weights_; }
    const Vec3& point(int i) const { return points_[static_cast<std::size_t>(i)]; }
    const Vec3& tangent(int i) const { return tangents_[static_cast<std::size_t>(i)]; }
    double weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }
    int size() const { return static_cast<int>(points_.size()); }
    bool closed() const { return true; }
    double length() const { return length_; }

    int next(int i) const { return i + 1 == size() ? 0 : i + 1; }
    int prev(int i) const { return i == 0 ? size() - 1 : i - 1; }

    /// Curvature of the circle through vertices i-1, i, i+1.
    double menger_curvature(int i) const;

    ClosedPolyline transformed(const Mat3& rot, double scale, const Vec3& shift) const;

private:
    std::vector<Vec3> points_;
    std::vector<Vec3> tangents_;
    std::vector<double> weights_;
    double length_ = 0.0;
};

/// Curvature of the circle through three points; zero when collinear.
double menger_curvature(const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace fbmono
