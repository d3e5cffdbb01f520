#pragma once

#include "fbmono/vec3.hpp"

#include <array>

namespace fbmono {

struct TriangleQuadPoint {
    std::array<double, 3> bary;
    double weight;  // fraction of the triangle area; weights sum to 1
};

/// Degree-5 symmetric 7-point rule on the triangle.
inline constexpr std::array<TriangleQuadPoint, 7> kTriangleRule7{{
    {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 0.225},
    {{0.059715871789770, 0.470142064105115, 0.470142064105115}, 0.132394152788506},
    {{0.470142064105115, 0.059715871789770, 0.470142064105115}, 0.132394152788506},
    {{0.470142064105115, 0.470142064105115, 0.059715871789770}, 0.132394152788506},
    {{0.797426985353087, 0.101286507323456, 0.101286507323456}, 0.125939180544827},
    {{0.101286507323456, 0.797426985353087, 0.101286507323456}, 0.125939180544827},
    {{0.101286507323456, 0.101286507323456, 0.797426985353087}, 0.125939180544827},
}};

inline Vec3 barycentric_point(const std::array<double, 3>& w, const Vec3& a, const Vec3& b, const Vec3& c)
{
    return w[0] * a + w[1] * b + w[2] * c;
}

}  // namespace fbmono
