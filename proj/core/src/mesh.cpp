#include "fbmono/mesh.hpp"

#include "fbmono/error.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>

namespace fbmono {

namespace {

std::uint64_t edge_key(int a, int b)
{
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

}  // namespace

TriangleMesh::TriangleMesh(std::vector<Vec3> vertices, std::vector<Face> faces)
    : vertices_(std::move(vertices)), faces_(std::move(faces))
{
    build_topology();
}

void TriangleMesh::build_topology()
{
    const int nv = vertex_count();
    for (const Vec3& v : vertices_) {
        if (!is_finite(v)) throw ParseError("non-finite vertex coordinate");
    }

    std::unordered_map<std::uint64_t, int> directed;  // half-edge -> face
    std::unordered_map<std::uint64_t, int> undirected_count;
    directed.reserve(faces_.size() * 3);
    std::vector<double> edge_lengths;
    edge_lengths.reserve(faces_.size() * 3);

    for (int f = 0; f < face_count(); ++f) {
        const Face& t = faces_[static_cast<std::size_t>(f)];
        for (int k = 0; k < 3; ++k) {
            if (t[k] < 0 || t[k] >= nv) {
                throw TopologyError("face " + std::to_string(f) + " references missing vertex");
            }
        }
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
            throw DegenerateError("face " + std::to_string(f) + " repeats a vertex");
        }
        const Vec3 e1 = vertex(t[1]) - vertex(t[0]);
        const Vec3 e2 = vertex(t[2]) - vertex(t[0]);
        const double scale = std::max({norm2(e1), norm2(e2), norm2(e2 - e1)});
        if (norm(cross(e1, e2)) <= 1e-14 * scale) {
            throw DegenerateError("face " + std::to_string(f) + " has zero area");
        }
        for (int k = 0; k < 3; ++k) {
            const int a = t[k];
            const int b = t[(k + 1) % 3];
            if (!directed.emplace(edge_key(a, b), f).second) {
                throw TopologyError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                    ") is non-manifold or inconsistently oriented");
            }
            const int c = undirected_count[edge_key(std::min(a, b), std::max(a, b))]++;
            if (c >= 2) {
                throw TopologyError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                    ") is shared by more than two faces");
            }
            if (a < b || directed.count(edge_key(b, a)) == 0) {
                edge_lengths.push_back(norm(vertex(b) - vertex(a)));
            }
        }
    }

    // boundary half-edges have no twin
    std::map<int, int> next;
    for (int f = 0; f < face_count(); ++f) {
        const Face& t = faces_[static_cast<std::size_t>(f)];
        for (int k = 0; k < 3; ++k) {
            const int a = t[k];
            const int b = t[(k + 1) % 3];
            if (directed.count(edge_key(b, a)) == 0) {
                if (!next.emplace(a, b).second) {
                    throw TopologyError("vertex " + std::to_string(a) +
                                        " has more than one outgoing boundary edge");
                }
            }
        }
    }

    on_boundary_.assign(static_cast<std::size_t>(nv), 0);
    std::map<int, bool> visited;
    for (const auto& [start, unused] : next) {
        if (visited[start]) continue;
        std::vector<int> loop;
        int v = start;
        while (!visited[v]) {
            visited[v] = true;
            loop.push_back(v);
            on_boundary_[static_cast<std::size_t>(v)] = 1;
            auto it = next.find(v);
            if (it == next.end()) throw TopologyError("boundary edges do not close into loops");
            v = it->second;
        }
        if (v != start) throw TopologyError("boundary edges do not close into loops");
        boundary_loops_.push_back(std::move(loop));
    }

    vf_offsets_.assign(static_cast<std::size_t>(nv) + 1, 0);
    for (const Face& t : faces_) {
        for (int k = 0; k < 3; ++k) ++vf_offsets_[static_cast<std::size_t>(t[k]) + 1];
    }
    for (int i = 0; i < nv; ++i) vf_offsets_[i + 1] += vf_offsets_[i];
    vf_faces_.assign(static_cast<std::size_t>(vf_offsets_.back()), 0);
    std::vector<int> fill(vf_offsets_.begin(), vf_offsets_.end() - 1);
    for (int f = 0; f < face_count(); ++f) {
        for (int k = 0; k < 3; ++k) vf_faces_[fill[faces_[f][k]]++] = f;
    }

    if (!edge_lengths.empty()) {
        auto mid = edge_lengths.begin() + static_cast<std::ptrdiff_t>(edge_lengths.size() / 2);
        std::nth_element(edge_lengths.begin(), mid, edge_lengths.end());
        median_edge_ = *mid;
    }
}

std::span<const int> TriangleMesh::vertex_faces(int i) const
{
    const auto b = static_cast<std::size_t>(vf_offsets_[i]);
    const auto e = static_cast<std::size_t>(vf_offsets_[i + 1]);
    return std::span<const int>(vf_faces_).subspan(b, e - b);
}

Vec3 TriangleMesh::face_normal(int f) const
{
    const Face& t = face(f);
    return normalized(cross(vertex(t[1]) - vertex(t[0]), vertex(t[2]) - vertex(t[0])));
}

double TriangleMesh::face_area(int f) const
{
    const Face& t = face(f);
    return 0.5 * norm(cross(vertex(t[1]) - vertex(t[0]), vertex(t[2]) - vertex(t[0])));
}

double TriangleMesh::total_area() const
{
    double a = 0.0;
    for (int f = 0; f < face_count(); ++f) a += face_area(f);
    return a;
}

TriangleMesh TriangleMesh::disjoint_union(const TriangleMesh& a, const TriangleMesh& b)
{
    std::vector<Vec3> verts(a.vertices_.begin(), a.vertices_.end());
    verts.insert(verts.end(), b.vertices_.begin(), b.vertices_.end());
    std::vector<Face> faces(a.faces_.begin(), a.faces_.end());
    const int off = a.vertex_count();
    for (Face t : b.faces_) faces.push_back({t[0] + off, t[1] + off, t[2] + off});
    return TriangleMesh(std::move(verts), std::move(faces));
}

TriangleMesh TriangleMesh::transformed(const Mat3& rot, double scale, const Vec3& shift) const
{
    std::vector<Vec3> verts;
    verts.reserve(vertices_.size());
    for (const Vec3& v : vertices_) verts.push_back(scale * (rot * v) + shift);
    return TriangleMesh(std::move(verts), faces_);
}

}  // namespace fbmono
