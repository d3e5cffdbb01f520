#include "fbmono/error.hpp"
#include "fbmono/operators.hpp"
#include "fbmono/shapes.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace fbmono;

namespace {

constexpr double kPi = std::numbers::pi;

// area-weighted RMS of |H| - expected over interior vertices
double interior_deviation(const TriangleMesh& m, const MeanCurvatureField& H, double expected)
{
    double sum = 0.0;
    double area = 0.0;
    for (int i = 0; i < m.vertex_count(); ++i) {
        if (m.has_boundary() && m.is_boundary_vertex(i)) continue;
        const auto k = static_cast<std::size_t>(i);
        const double d = norm(H.values[k]) - expected;
        sum += H.areas[k] * d * d;
        area += H.areas[k];
    }
    return std::sqrt(sum / area);
}

}  // namespace

TEST(Operators, FlatDiskIsMinimal)
{
    const TriangleMesh m = make_flat_disk(48);
    const MeanCurvatureField H = mean_curvature(m);
    for (const Vec3& h : H.values) EXPECT_LT(norm(h), 1e-10);
}

TEST(Operators, VertexAreasPartitionTheSurface)
{
    const TriangleMesh m = make_perturbed_cap(1.0, 48, 0.2, 2, 0.0);
    double sum = 0.0;
    for (double a : vertex_areas(m)) sum += a;
    EXPECT_NEAR(sum, m.total_area(), 1e-13 * m.total_area());
}

TEST(Operators, SphereCalibrationPointsInwardWithMagnitudeTwo)
{
    const TriangleMesh coarse = make_sphere(1.0, 8);
    const TriangleMesh fine = make_sphere(1.0, 16);
    const MeanCurvatureField Hc = mean_curvature(coarse);
    const MeanCurvatureField Hf = mean_curvature(fine);
    for (int i = 0; i < coarse.vertex_count(); ++i) {
        EXPECT_LT(dot(Hc.values[static_cast<std::size_t>(i)], coarse.vertex(i)), 0.0);
    }
    const double ec = interior_deviation(coarse, Hc, 2.0);
    const double ef = interior_deviation(fine, Hf, 2.0);
    EXPECT_LT(ef, ec);
    EXPECT_LT(ef, 0.05);
}

TEST(Operators, ClosedSphereHasZeroTotalCurvatureVector)
{
    const TriangleMesh m = make_sphere(1.0, 10);
    const MeanCurvatureField H = mean_curvature(m);
    Vec3 total;
    for (std::size_t i = 0; i < H.values.size(); ++i) total += H.areas[i] * H.values[i];
    EXPECT_LT(norm(total), 1e-3);
}

TEST(Operators, CapCurvatureApproachesTwoOverR)
{
    for (double r : {0.5, 2.0}) {
        const TriangleMesh coarse = make_spherical_cap(r, 48);
        const TriangleMesh fine = make_spherical_cap(r, 96);
        const double ec = interior_deviation(coarse, mean_curvature(coarse), 2.0 / r);
        const double ef = interior_deviation(fine, mean_curvature(fine), 2.0 / r);
        EXPECT_LT(ef, ec) << r;
        EXPECT_LT(ef, 0.02 * 2.0 / r) << r;
    }
}

TEST(Operators, ProjectionRemovesTangentialPart)
{
    const TriangleMesh m = make_perturbed_cap(1.0, 48, 0.3, 3, 0.0);
    const MeanCurvatureField raw = mean_curvature(m, {false});
    const MeanCurvatureField projected = mean_curvature(m);
    EXPECT_DOUBLE_EQ(raw.tangential_rms, projected.tangential_rms);
    EXPECT_GT(projected.tangential_rms, 0.0);
    const std::vector<Vec3> normals = vertex_normals(m);
    for (std::size_t i = 0; i < normals.size(); ++i) {
        EXPECT_LT(norm(cross(projected.values[i], normals[i])), 1e-12 * (1.0 + norm(projected.values[i])));
    }
}

TEST(Operators, DiskConormalIsRadial)
{
    const TriangleMesh m = make_flat_disk(96);
    const BoundaryField B = conormal(m);
    EXPECT_EQ(B.size(), 96u);
    double weights = 0.0;
    for (std::size_t k = 0; k < B.size(); ++k) {
        const Vec3& x = m.vertex(B.vertices[k]);
        EXPECT_NEAR(norm(B.conormal[k]), 1.0, 1e-15);
        EXPECT_LT(norm(B.conormal[k] - x), 1e-3);
        EXPECT_LT(std::abs(dot(B.conormal[k], B.tangent[k])), 1e-12);
        weights += B.weights[k];
    }
    EXPECT_NEAR(weights, B.length, 1e-13);
}

TEST(Operators, CapConormalMeetsSphereOrthogonally)
{
    double previous = INFINITY;
    for (int n : {48, 96}) {
        const TriangleMesh m = make_spherical_cap(1.0, n);
        const BoundaryField B = conormal(m);
        double worst = 0.0;
        for (std::size_t k = 0; k < B.size(); ++k) {
            worst = std::max(worst, std::abs(1.0 - dot(m.vertex(B.vertices[k]), B.conormal[k])));
        }
        EXPECT_LT(worst, previous);
        previous = worst;
    }
    EXPECT_LT(previous, 1e-3);
}

TEST(Operators, ConormalNeedsBoundary)
{
    EXPECT_THROW(conormal(make_sphere(1.0, 2)), InvalidArgument);
}

TEST(Operators, FaceCurvatureIsNormalToFace)
{
    const TriangleMesh m = make_spherical_cap(1.0, 24);
    const MeanCurvatureField H = mean_curvature(m);
    for (int f = 0; f < m.face_count(); f += 7) {
        const Vec3 h = face_mean_curvature(m, H, f, {0.2, 0.3, 0.5});
        EXPECT_LT(norm(cross(h, m.face_normal(f))), 1e-12);
    }
}

TEST(Operators, PositionFieldOnCapMatchesClosedForm)
{
    // 2 area + ∫H·x = ∫x·η with x·η = 1 on the boundary circle of radius 1/√2
    const double area = 2.0 * kPi * (1.0 - 1.0 / std::sqrt(2.0));
    const double boundary = 2.0 * kPi / std::sqrt(2.0);
    EXPECT_NEAR(2.0 * area, 3.6806047380424405, 1e-12);
    EXPECT_NEAR(boundary, 4.4428829381583662, 1e-12);

    const TriangleMesh m = make_spherical_cap(1.0, 96);
    const FirstVariationTerms t = first_variation_residual(m, mean_curvature(m), conormal(m), VectorField::position());
    EXPECT_NEAR(t.divergence, 2.0 * area, 0.01 * 2.0 * area);
    EXPECT_NEAR(t.boundary, boundary, 0.01 * boundary);
    EXPECT_NEAR(t.mean_curvature, boundary - 2.0 * area, 0.01 * (boundary - 2.0 * area));
    EXPECT_LT(t.residual, 1e-2);
}

TEST(Operators, FlatDiskPositionFieldBalances)
{
    const TriangleMesh m = make_flat_disk(96);
    const FirstVariationTerms t = first_variation_residual(m, mean_curvature(m), conormal(m), VectorField::position());
    EXPECT_NEAR(t.divergence, 2.0 * m.total_area(), 1e-12);
    EXPECT_LT(std::abs(t.mean_curvature), 1e-10);
    EXPECT_NEAR(t.boundary, 2.0 * kPi, 1e-2);
}

TEST(Operators, AffineFieldJacobianIsConstant)
{
    const Mat3 A = rotation({0, 1, 1}, 0.3) * 2.0;
    const VectorField X = VectorField::affine(A, {1, 2, 3});
    const Vec3 x{0.3, -0.2, 0.5};
    EXPECT_LT(norm(X.value(x) - (A * x + Vec3{1, 2, 3})), 1e-15);
    EXPECT_EQ(X.jacobian(x).m, A.m);
}

TEST(Operators, QuadraticFieldJacobianMatchesDifferences)
{
    const std::array<Mat3, 3> Q = {Mat3::identity(), Mat3::outer({1, 0, 1}, {1, 0, 1}),
                                   Mat3::outer({0, 1, 0}, {1, 0, 0}) + Mat3::outer({1, 0, 0}, {0, 1, 0})};
    const VectorField X = VectorField::quadratic(Q, rotation({1, 0, 0}, 0.2));
    const Vec3 x{0.4, -0.3, 0.2};
    const Mat3 J = X.jacobian(x);
    const double eps = 1e-6;
    for (int j = 0; j < 3; ++j) {
        Vec3 d;
        d[j] = eps;
        const Vec3 col = (X.value(x + d) - X.value(x - d)) / (2.0 * eps);
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(J(i, j), col[i], 1e-8);
    }
}

TEST(Operators, ResidualsShrinkUnderRefinement)
{
    const std::array<Mat3, 3> Q = {Mat3::identity(), Mat3::outer({1, 2, 0}, {1, 2, 0}), Mat3::scaled_identity(-0.5)};
    const std::vector<VectorField> fields = {VectorField::constant({0.3, -0.1, 1.0}), VectorField::position(),
                                             VectorField::quadratic(Q, Mat3::identity())};
    for (double r : {0.5, 1.0, 2.0}) {
        const TriangleMesh coarse = make_spherical_cap(r, 48);
        const TriangleMesh fine = make_spherical_cap(r, 96);
        const auto Hc = mean_curvature(coarse);
        const auto Hf = mean_curvature(fine);
        const auto Bc = conormal(coarse);
        const auto Bf = conormal(fine);
        for (const VectorField& X : fields) {
            const double a = first_variation_residual(coarse, Hc, Bc, X).residual;
            const double b = first_variation_residual(fine, Hf, Bf, X).residual;
            EXPECT_LT(b, a) << "r = " << r;
            EXPECT_LT(b, 1e-2) << "r = " << r;
        }
    }
}
