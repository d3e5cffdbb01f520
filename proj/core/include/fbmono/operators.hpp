#pragma once

#include "fbmono/mesh.hpp"

#include <array>
#include <functional>
#include <vector>

namespace fbmono {

/// Discrete mean curvature vector H (pointing toward concavity, so that
/// int div X = -int H.X + boundary term) and the barycentric vertex areas.
struct MeanCurvatureField {
    std::vector<Vec3> values;
    std::vector<double> areas;
    /// Area-weighted RMS of the part of H orthogonal to the vertex normal,
    /// measured before any projection.
    double tangential_rms = 0.0;
    bool projected = true;
};

struct MeanCurvatureOptions {
    /// Project H onto the vertex normal before use.
    bool project_to_normal = true;
};

/// Cotangent Laplacian of the position divided by the barycentric vertex
/// area. Boundary vertices carry the mean of their interior neighbours.
MeanCurvatureField mean_curvature(const TriangleMesh& mesh, const MeanCurvatureOptions& options = {});

/// Barycentric vertex areas; they partition the total area exactly.
std::vector<double> vertex_areas(const TriangleMesh& mesh);

/// Area-weighted unit vertex normals.
std::vector<Vec3> vertex_normals(const TriangleMesh& mesh);

/// Outward unit conormal and arc-length weight at each boundary vertex.
struct BoundaryField {
    std::vector<int> vertices;
    std::vector<Vec3> conormal;
    std::vector<double> weights;  // dσ, half the incident boundary edge lengths
    std::vector<Vec3> tangent;    // unit boundary tangent (discrete)
    double length = 0.0;

    std::size_t size() const { return vertices.size(); }
};

/// η = t × N at each boundary vertex, with t the central boundary tangent and
/// N the normal of a quadratic height fit over the vertex two-ring.
BoundaryField conormal(const TriangleMesh& mesh);

/// H interpolated linearly on face f at barycentric weights w, then projected
/// onto the face normal (the face plane is the discrete tangent plane).
Vec3 face_mean_curvature(const TriangleMesh& mesh, const MeanCurvatureField& H, int f, const std::array<double, 3>& w);

/// Smooth test vector field with analytic Jacobian (row i = gradient of X_i).
struct VectorField {
    std::function<Vec3(const Vec3&)> value;
    std::function<Mat3(const Vec3&)> jacobian;

    static VectorField constant(const Vec3& c);
    static VectorField position();
    /// X(x) = A x + b
    static VectorField affine(const Mat3& A, const Vec3& b);
    /// X_i(x) = x^T Q_i x / 2 + (L x)_i, with symmetric Q_i.
    static VectorField quadratic(const std::array<Mat3, 3>& Q, const Mat3& L);
};

struct FirstVariationTerms {
    double divergence = 0.0;  // int div_Σ X dμ
    double mean_curvature = 0.0;  // int H.X dμ
    double boundary = 0.0;  // int X.η dσ
    double residual = 0.0;  // |div + H.X - X.η|
};

FirstVariationTerms first_variation_residual(const TriangleMesh& mesh, const MeanCurvatureField& H,
                                             const BoundaryField& B, const VectorField& X);

}  // namespace fbmono
