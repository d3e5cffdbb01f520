#include "fbmono/error.hpp"
#include "fbmono/mesh.hpp"
#include "fbmono/shapes.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace fbmono;

namespace {

TriangleMesh unit_square()
{
    return TriangleMesh({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, {{0, 1, 2}, {0, 2, 3}});
}

}  // namespace

TEST(Mesh, SquareHasOneBoundaryLoop)
{
    const TriangleMesh m = unit_square();
    ASSERT_EQ(m.boundary_loops().size(), 1u);
    EXPECT_EQ(m.boundary_loops()[0].size(), 4u);
    EXPECT_DOUBLE_EQ(m.total_area(), 1.0);
    for (int i = 0; i < 4; ++i) EXPECT_TRUE(m.is_boundary_vertex(i));
}

TEST(Mesh, FaceNormalFollowsOrientation)
{
    const TriangleMesh m = unit_square();
    EXPECT_NEAR(m.face_normal(0).z, 1.0, 1e-15);
}

TEST(Mesh, RejectsZeroAreaFace)
{
    EXPECT_THROW(TriangleMesh({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}, {{0, 1, 2}}), DegenerateError);
}

TEST(Mesh, RejectsRepeatedVertex)
{
    EXPECT_THROW(TriangleMesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 1}}), DegenerateError);
}

TEST(Mesh, RejectsMissingVertex)
{
    EXPECT_THROW(TriangleMesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 5}}), TopologyError);
}

TEST(Mesh, RejectsInconsistentOrientation)
{
    EXPECT_THROW(TriangleMesh({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, {{0, 1, 2}, {0, 3, 2}}), TopologyError);
}

TEST(Mesh, RejectsEdgeOnThreeFaces)
{
    EXPECT_THROW(TriangleMesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}},
                              {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}}),
                 TopologyError);
}

TEST(Mesh, RejectsNonFiniteVertex)
{
    EXPECT_THROW(TriangleMesh({{0, 0, 0}, {1, 0, 0}, {0, NAN, 0}}, {{0, 1, 2}}), ParseError);
}

TEST(Mesh, DisjointUnionKeepsBothParts)
{
    const TriangleMesh a = unit_square();
    const TriangleMesh u = TriangleMesh::disjoint_union(a, a.transformed(Mat3::identity(), 1.0, {0, 0, 5}));
    EXPECT_EQ(u.vertex_count(), 8);
    EXPECT_EQ(u.face_count(), 4);
    EXPECT_EQ(u.boundary_loops().size(), 2u);
    EXPECT_DOUBLE_EQ(u.total_area(), 2.0);
}

TEST(Mesh, TransformScalesArea)
{
    const TriangleMesh m = unit_square().transformed(rotation({1, 1, 0}, 0.3), 3.0, {1, 2, 3});
    EXPECT_NEAR(m.total_area(), 9.0, 1e-13);
}

TEST(Mesh, VertexFacesCoverEveryIncidence)
{
    const TriangleMesh m = make_flat_disk(24);
    std::size_t total = 0;
    for (int i = 0; i < m.vertex_count(); ++i) total += m.vertex_faces(i).size();
    EXPECT_EQ(total, 3u * static_cast<std::size_t>(m.face_count()));
}

TEST(Vec3, RotationIsOrthogonal)
{
    const Mat3 r = rotation({0.3, -1.0, 2.0}, 1.1);
    const Vec3 v{0.2, 0.7, -1.3};
    EXPECT_NEAR(norm(r * v), norm(v), 1e-15);
    const Vec3 axis = normalized(Vec3{0.3, -1.0, 2.0});
    EXPECT_NEAR(norm(r * axis - axis), 0.0, 1e-15);
    EXPECT_NEAR((rotation({0, 0, 1}, std::numbers::pi / 2) * Vec3{1, 0, 0}).y, 1.0, 1e-15);
}

TEST(Vec3, InvertIsAnInvolution)
{
    const Vec3 v{0.3, -0.4, 1.2};
    EXPECT_NEAR(norm(invert(invert(v)) - v), 0.0, 1e-15);
    EXPECT_NEAR(norm(invert(v)) * norm(v), 1.0, 1e-15);
}
