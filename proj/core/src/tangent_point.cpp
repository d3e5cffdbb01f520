#include "fbmono/tangent_point.hpp"

#include "fbmono/error.hpp"
#include "fbmono/parallel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fbmono {

namespace {

constexpr double kPi = std::numbers::pi;

bool near_diagonal(const ClosedPolyline& c, int i, int j) { return j == i || j == c.next(i) || j == c.prev(i); }

// Kernel with the tangent at a, including the closure near the diagonal.
double pair_kernel(const ClosedPolyline& c, const std::vector<double>& kappa, int a, int b)
{
    if (near_diagonal(c, a, b)) return kappa[static_cast<std::size_t>(a)];
    return tangent_point_kernel(c.point(a), c.tangent(a), c.point(b));
}

std::vector<double> menger_all(const ClosedPolyline& c)
{
    std::vector<double> k(static_cast<std::size_t>(c.size()));
    for (int i = 0; i < c.size(); ++i) k[static_cast<std::size_t>(i)] = c.menger_curvature(i);
    return k;
}

}  // namespace

double tangent_point_kernel(const Vec3& x, const Vec3& tx, const Vec3& y)
{
    const Vec3 r = y - x;
    const double r2 = norm2(r);
    if (!(r2 > 0.0)) throw InvalidArgument("tangent-point radius needs distinct points");
    const double d = norm(r - dot(r, tx) * tx);
    return 2.0 * d / r2;
}

double tangent_point_radius(const Vec3& x, const Vec3& tx, const Vec3& y)
{
    const double k = tangent_point_kernel(x, tx, y);
    return k > 0.0 ? 1.0 / k : std::numeric_limits<double>::infinity();
}

CurveEnergyReport curve_energy(const ClosedPolyline& curve, const std::vector<double>& p_list)
{
    const int n = curve.size();
    if (n < 8) throw InvalidArgument("tangent-point energy needs at least 8 vertices");
    std::vector<double> ps{1.0};
    for (double p : p_list) {
        if (!(p > 1.0 && p <= 8.0)) throw InvalidArgument("exponent p must lie in (1, 8], got " + std::to_string(p));
        if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
    }
    const std::vector<double> kappa = menger_all(curve);
    const std::size_t np = ps.size();
    const auto un = static_cast<std::size_t>(n);

    // Row sums per exponent, and the dual per-point integral.
    std::vector<double> rows(un * np, 0.0);
    std::vector<double> dual(un, 0.0);
    std::vector<double> moving(un, 0.0);
    parallel_blocks(un, 8, [&](std::size_t b, std::size_t e) {
        for (std::size_t ui = b; ui < e; ++ui) {
            const int i = static_cast<int>(ui);
            double d = 0.0;
            double m = 0.0;
            for (int j = 0; j < n; ++j) {
                const double k = pair_kernel(curve, kappa, i, j);
                const double wj = curve.weight(j);
                d += wj * k;
                m += wj * pair_kernel(curve, kappa, j, i);
                for (std::size_t q = 0; q < np; ++q) {
                    rows[ui * np + q] += wj * (q == 0 ? k : std::pow(k, ps[q]));
                }
            }
            dual[ui] = d;
            moving[ui] = m;
        }
    });

    CurveEnergyReport rep;
    rep.length = curve.length();
    for (std::size_t q = 0; q < np; ++q) {
        double e = 0.0;
        for (std::size_t i = 0; i < un; ++i) e += curve.weight(static_cast<int>(i)) * rows[i * np + q];
        rep.ep[ps[q]] = e;
        if (q > 0) rep.normalized_ep[ps[q]] = std::pow(e, 1.0 / ps[q]) * std::pow(rep.length, 1.0 - 2.0 / ps[q]);
    }
    rep.e1 = rep.ep[1.0];
    rep.per_point_integral = std::move(moving);
    rep.per_point_dual = std::move(dual);
    return rep;
}

Verdict length_bound_check(const CurveEnergyReport& report, double tol)
{
    const double lhs = 2.0 * kPi * report.length;
    return {"length_bound", lhs <= report.e1 + tol, report.e1, lhs, tol};
}

bool length_bound_equality(const CurveEnergyReport& report, double tol)
{
    return std::abs(report.e1 - 2.0 * kPi * report.length) <= tol;
}

std::vector<Verdict> normalized_bound_check(const CurveEnergyReport& report, double tol)
{
    if (report.normalized_ep.empty()) throw InvalidArgument("normalized energy check needs at least one p > 1");
    std::vector<Verdict> out;
    for (const auto& [p, v] : report.normalized_ep) {
        std::string name = "normalized_bound_p" + std::to_string(p);
        name.erase(name.find_last_not_of('0') + 1);
        if (name.back() == '.') name.pop_back();
        out.push_back({name, v >= 2.0 * kPi - tol, v, 2.0 * kPi, tol});
    }
    return out;
}

PointwiseIntegrals pointwise_integrals(const ClosedPolyline& curve, int base)
{
    if (base < 0 || base >= curve.size()) throw InvalidArgument("base vertex index out of range");
    const std::vector<double> kappa = menger_all(curve);
    PointwiseIntegrals v;
    for (int j = 0; j < curve.size(); ++j) {
        v.moving_tangent += curve.weight(j) * pair_kernel(curve, kappa, j, base);
        v.base_tangent += curve.weight(j) * pair_kernel(curve, kappa, base, j);
    }
    return v;
}

}  // namespace fbmono
