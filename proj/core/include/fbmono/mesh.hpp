#pragma once

#include "fbmono/vec3.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace fbmono {

using Face = std::array<int, 3>;

/// Embedded compact triangulated surface, possibly with boundary.
///
/// Construction validates the manifold invariants (each edge on at most two
/// faces, consistent orientation, no zero-area faces) and extracts the
/// boundary loops. Instances are immutable afterwards.
class TriangleMesh {
public:
    TriangleMesh() = default;
    TriangleMesh(std::vector<Vec3> vertices, std::vector<Face> faces);

    std::span<const Vec3> vertices() const { return vertices_; }
    std::span<const Face> faces() const { return faces_; }
    const Vec3& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
    const Face& face(int f) const { return faces_[static_cast<std::size_t>(f)]; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int face_count() const { return static_cast<int>(faces_.size()); }

    /// Closed boundary loops, ordered along the induced orientation.
    const std::vector<std::vector<int>>& boundary_loops() const { return boundary_loops_; }
    bool has_boundary() const { return !boundary_loops_.empty(); }
    bool is_boundary_vertex(int i) const { return on_boundary_[static_cast<std::size_t>(i)] != 0; }

    /// Faces incident to vertex i.
    std::span<const int> vertex_faces(int i) const;

    Vec3 face_normal(int f) const;  // unit
    double face_area(int f) const;
    double total_area() const;
    double median_edge_length() const { return median_edge_; }

    /// Vertex-disjoint union of two meshes (used for multiplicity fixtures).
    static TriangleMesh disjoint_union(const TriangleMesh& a, const TriangleMesh& b);

    /// Applies x -> s * R x + t to every vertex.
    TriangleMesh transformed(const Mat3& rot, double scale, const Vec3& shift) const;

private:
    void build_topology();

    std::vector<Vec3> vertices_;
    std::vector<Face> faces_;
    std::vector<std::vector<int>> boundary_loops_;
    std::vector<char> on_boundary_;
    std::vector<int> vf_offsets_;
    std::vector<int> vf_faces_;
    double median_edge_ = 0.0;
};

}  // namespace fbmono
