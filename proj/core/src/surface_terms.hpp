#pragma once

#include "fbmono/clip.hpp"
#include "fbmono/operators.hpp"

namespace fbmono::detail {

/// Face normal and normal component of the interpolated H at a surface point.
struct NormalCurvature {
    Vec3 n;
    double h;  // H·n
};

inline NormalCurvature normal_curvature_at(const TriangleMesh& mesh, const MeanCurvatureField& H,
                                           const SurfacePoint& p)
{
    const Face& t = mesh.face(p.face);
    const Vec3 n = mesh.face_normal(p.face);
    const Vec3 hv = p.bary[0] * H.values[static_cast<std::size_t>(t[0])] +
                    p.bary[1] * H.values[static_cast<std::size_t>(t[1])] +
                    p.bary[2] * H.values[static_cast<std::size_t>(t[2])];
    return {n, dot(hv, n)};
}

/// |H/4 + (x - c)^⊥/|x - c|²|² with both terms along the face normal.
inline double normal_defect_density(const NormalCurvature& nc, const Vec3& x, const Vec3& c)
{
    const Vec3 d = x - c;
    const double v = 0.25 * nc.h + dot(d, nc.n) / norm2(d);
    return v * v;
}

}  // namespace fbmono::detail
