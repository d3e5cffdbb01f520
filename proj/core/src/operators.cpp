#include "fbmono/operators.hpp"

#include "fbmono/error.hpp"
#include "fbmono/parallel.hpp"
#include "fbmono/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace fbmono {

namespace {

/// Unit normal at vertex i from a least-squares quadratic height fit over
/// its two-ring, in a frame with tangent direction `t`. Falls back to the
/// face-average normal when the two-ring is too small.
Vec3 jet_normal(const TriangleMesh& mesh, int i, const Vec3& t, const Vec3& fallback)
{
    std::vector<int> ring;
    for (int f : mesh.vertex_faces(i)) {
        for (int v : mesh.face(f)) {
            for (int g : mesh.vertex_faces(v)) {
                for (int w : mesh.face(g)) ring.push_back(w);
            }
        }
    }
    std::sort(ring.begin(), ring.end());
    ring.erase(std::unique(ring.begin(), ring.end()), ring.end());
    ring.erase(std::remove(ring.begin(), ring.end(), i), ring.end());
    if (ring.size() < 6) return fallback;

    const Vec3 u = normalized(reject(t, fallback));
    const Vec3 w = cross(fallback, u);
    const Vec3& o = mesh.vertex(i);
    Eigen::MatrixXd A(static_cast<Eigen::Index>(ring.size()), 5);
    Eigen::VectorXd z(static_cast<Eigen::Index>(ring.size()));
    for (std::size_t k = 0; k < ring.size(); ++k) {
        const Vec3 d = mesh.vertex(ring[k]) - o;
        const double x = dot(d, u);
        const double y = dot(d, w);
        const auto r = static_cast<Eigen::Index>(k);
        A.row(r) << x, y, x * x, x * y, y * y;
        z(r) = dot(d, fallback);
    }
    const Eigen::VectorXd c = A.colPivHouseholderQr().solve(z);
    const Vec3 n = normalized(fallback - c(0) * u - c(1) * w);
    return is_finite(n) ? n : fallback;
}

}  // namespace

std::vector<double> vertex_areas(const TriangleMesh& mesh)
{
    std::vector<double> areas(static_cast<std::size_t>(mesh.vertex_count()), 0.0);
    for (int f = 0; f < mesh.face_count(); ++f) {
        const double a = mesh.face_area(f) / 3.0;
        for (int v : mesh.face(f)) areas[static_cast<std::size_t>(v)] += a;
    }
    return areas;
}

std::vector<Vec3> vertex_normals(const TriangleMesh& mesh)
{
    std::vector<Vec3> normals(static_cast<std::size_t>(mesh.vertex_count()));
    for (int f = 0; f < mesh.face_count(); ++f) {
        const Face& t = mesh.face(f);
        const Vec3 n = cross(mesh.vertex(t[1]) - mesh.vertex(t[0]), mesh.vertex(t[2]) - mesh.vertex(t[0]));
        for (int v : t) normals[static_cast<std::size_t>(v)] += n;
    }
    for (Vec3& n : normals) n = normalized(n);
    return normals;
}

MeanCurvatureField mean_curvature(const TriangleMesh& mesh, const MeanCurvatureOptions& options)
{
    const auto nv = static_cast<std::size_t>(mesh.vertex_count());
    std::vector<Vec3> laplace(nv);
    for (int f = 0; f < mesh.face_count(); ++f) {
        const Face& t = mesh.face(f);
        for (int k = 0; k < 3; ++k) {
            const int i = t[k];
            const int j = t[(k + 1) % 3];
            const int o = t[(k + 2) % 3];
            const Vec3 u = mesh.vertex(i) - mesh.vertex(o);
            const Vec3 v = mesh.vertex(j) - mesh.vertex(o);
            const double s = norm(cross(u, v));
            if (!(s > 0.0)) throw DegenerateError("face " + std::to_string(f) + " has zero area");
            const double half_cot = 0.5 * dot(u, v) / s;
            const Vec3 e = mesh.vertex(j) - mesh.vertex(i);
            laplace[static_cast<std::size_t>(i)] += half_cot * e;
            laplace[static_cast<std::size_t>(j)] -= half_cot * e;
        }
    }

    MeanCurvatureField field;
    field.areas = vertex_areas(mesh);
    field.projected = options.project_to_normal;
    field.values.resize(nv);
    for (std::size_t i = 0; i < nv; ++i) field.values[i] = laplace[i] / field.areas[i];

    // boundary vertices: the cotangent stencil misses a link, use the interior limit
    for (int i = 0; i < mesh.vertex_count(); ++i) {
        if (!mesh.is_boundary_vertex(i)) continue;
        Vec3 sum;
        int count = 0;
        for (int f : mesh.vertex_faces(i)) {
            for (int v : mesh.face(f)) {
                if (!mesh.is_boundary_vertex(v)) {
                    sum += field.values[static_cast<std::size_t>(v)];
                    ++count;
                }
            }
        }
        field.values[static_cast<std::size_t>(i)] = count > 0 ? sum / count : Vec3{};
    }

    const std::vector<Vec3> normals = vertex_normals(mesh);
    double tangential = 0.0;
    double area = 0.0;
    for (std::size_t i = 0; i < nv; ++i) {
        const Vec3 h = field.values[i];
        const Vec3 hn = dot(h, normals[i]) * normals[i];
        tangential += norm2(h - hn) * field.areas[i];
        area += field.areas[i];
        if (options.project_to_normal) field.values[i] = hn;
    }
    field.tangential_rms = std::sqrt(tangential / area);
    return field;
}

BoundaryField conormal(const TriangleMesh& mesh)
{
    if (!mesh.has_boundary()) throw InvalidArgument("conormal requires a mesh with boundary");

    // face containing the oriented boundary edge a -> b
    auto edge_face = [&](int a, int b) {
        for (int f : mesh.vertex_faces(a)) {
            const Face& t = mesh.face(f);
            for (int k = 0; k < 3; ++k) {
                if (t[k] == a && t[(k + 1) % 3] == b) return f;
            }
        }
        throw TopologyError("boundary edge without incident face");
    };

    BoundaryField field;
    for (const auto& loop : mesh.boundary_loops()) {
        const std::size_t n = loop.size();
        std::vector<Vec3> edge_out(n);
        std::vector<double> edge_len(n);
        std::vector<Vec3> edge_dir(n);
        for (std::size_t k = 0; k < n; ++k) {
            const int a = loop[k];
            const int b = loop[(k + 1) % n];
            const Vec3 d = mesh.vertex(b) - mesh.vertex(a);
            edge_len[k] = norm(d);
            edge_dir[k] = d / edge_len[k];
            edge_out[k] = normalized(cross(d, mesh.face_normal(edge_face(a, b))));
        }
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t p = (k + n - 1) % n;
            const Vec3 face_eta = normalized(edge_len[p] * edge_out[p] + edge_len[k] * edge_out[k]);
            const Vec3 t = normalized(edge_dir[p] + edge_dir[k]);
            const Vec3 fallback = normalized(cross(face_eta, t));
            const Vec3 normal = jet_normal(mesh, loop[k], t, fallback);
            field.vertices.push_back(loop[k]);
            field.conormal.push_back(normalized(cross(t, normal)));
            field.tangent.push_back(t);
            field.weights.push_back(0.5 * (edge_len[p] + edge_len[k]));
            field.length += edge_len[k];
        }
    }
    return field;
}

Vec3 face_mean_curvature(const TriangleMesh& mesh, const MeanCurvatureField& H, int f, const std::array<double, 3>& w)
{
    const Face& t = mesh.face(f);
    const Vec3 h = w[0] * H.values[static_cast<std::size_t>(t[0])] + w[1] * H.values[static_cast<std::size_t>(t[1])] +
                   w[2] * H.values[static_cast<std::size_t>(t[2])];
    const Vec3 n = mesh.face_normal(f);
    return dot(h, n) * n;
}

VectorField VectorField::constant(const Vec3& c)
{
    return {[c](const Vec3&) { return c; }, [](const Vec3&) { return Mat3{}; }};
}

VectorField VectorField::position()
{
    return {[](const Vec3& x) { return x; }, [](const Vec3&) { return Mat3::identity(); }};
}

VectorField VectorField::affine(const Mat3& A, const Vec3& b)
{
    return {[A, b](const Vec3& x) { return A * x + b; }, [A](const Vec3&) { return A; }};
}

VectorField VectorField::quadratic(const std::array<Mat3, 3>& Q, const Mat3& L)
{
    return {[Q, L](const Vec3& x) {
                Vec3 r = L * x;
                for (int i = 0; i < 3; ++i) r[i] += 0.5 * dot(x, Q[static_cast<std::size_t>(i)] * x);
                return r;
            },
            [Q, L](const Vec3& x) {
                Mat3 J = L;
                for (int i = 0; i < 3; ++i) {
                    const Vec3 g = Q[static_cast<std::size_t>(i)] * x;
                    for (int j = 0; j < 3; ++j) J(i, j) += g[j];
                }
                return J;
            }};
}

FirstVariationTerms first_variation_residual(const TriangleMesh& mesh, const MeanCurvatureField& H,
                                             const BoundaryField& B, const VectorField& X)
{
    struct Pair {
        double div = 0.0;
        double hx = 0.0;
        Pair& operator+=(const Pair& o)
        {
            div += o.div;
            hx += o.hx;
            return *this;
        }
    };
    const Pair sums = deterministic_sum<Pair>(static_cast<std::size_t>(mesh.face_count()), [&](std::size_t fi) {
        const int f = static_cast<int>(fi);
        const Face& t = mesh.face(f);
        const double area = mesh.face_area(f);
        const Vec3 n = mesh.face_normal(f);
        Pair p;
        for (const auto& q : kTriangleRule7) {
            const Vec3 x = barycentric_point(q.bary, mesh.vertex(t[0]), mesh.vertex(t[1]), mesh.vertex(t[2]));
            const Mat3 J = X.jacobian(x);
            p.div += q.weight * area * (J.trace() - dot(n, J * n));
            p.hx += q.weight * area * dot(face_mean_curvature(mesh, H, f, q.bary), X.value(x));
        }
        return p;
    });

    FirstVariationTerms terms;
    terms.divergence = sums.div;
    terms.mean_curvature = sums.hx;
    for (std::size_t k = 0; k < B.size(); ++k) {
        terms.boundary += B.weights[k] * dot(X.value(mesh.vertex(B.vertices[k])), B.conormal[k]);
    }
    terms.residual = std::abs(terms.divergence + terms.mean_curvature - terms.boundary);
    return terms;
}

}  // namespace fbmono
