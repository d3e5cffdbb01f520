#include "fbmono/verify.hpp"

#include "fbmono/error.hpp"
#include "fbmono/optimizer.hpp"
#include "fbmono/shapes.hpp"
#include "fbmono/support.hpp"
#include "fbmono/tangent_point.hpp"
#include "fbmono/willmore.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace fbmono {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(const char* format, auto... args)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

Verdict near(std::string name, double measured, double expected, double tol)
{
    return {std::move(name), std::abs(measured - expected) <= tol, measured, expected, tol};
}

Verdict near_relative(std::string name, double measured, double expected, double rel)
{
    return near(std::move(name), measured, expected, rel * std::abs(expected));
}

Verdict at_most(std::string name, double measured, double bound)
{
    return {std::move(name), measured <= bound, measured, bound, 0.0};
}

Verdict at_least(std::string name, double measured, double bound)
{
    return {std::move(name), measured >= bound, measured, bound, 0.0};
}

/// Passes when the fine value is smaller in magnitude, or both sit below `floor`.
Verdict decreasing(std::string name, double coarse, double fine, double floor)
{
    const double a = std::abs(coarse);
    const double b = std::abs(fine);
    return {std::move(name), b < a || std::max(a, b) <= floor, b, a, floor};
}

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct SurfaceFixture {
    std::string name;
    double r = 0.0;  // 0 for the flat disk

    TriangleMesh mesh(int resolution) const
    {
        return r == 0.0 ? make_flat_disk(resolution) : make_spherical_cap(r, resolution);
    }
    Vec3 interior() const
    {
        if (r == 0.0) return {0.3, 0.0, 0.0};
        return {0.0, 0.0, std::sqrt(1.0 + r * r) - r};
    }
    Vec3 boundary() const
    {
        if (r == 0.0) return {1.0, 0.0, 0.0};
        const double rho = spherical_cap_boundary_radius(r);
        return {rho, 0.0, std::sqrt(1.0 - rho * rho)};
    }
};

std::vector<SurfaceFixture> surface_fixtures(bool caps_only = false)
{
    std::vector<SurfaceFixture> out;
    if (!caps_only) out.push_back({"disk", 0.0});
    out.push_back({"cap0.5", 0.5});
    out.push_back({"cap1", 1.0});
    out.push_back({"cap2", 2.0});
    return out;
}

struct Analysis {
    TriangleMesh mesh;
    MeanCurvatureField H;
    BoundaryField B;

    explicit Analysis(TriangleMesh m) : mesh(std::move(m)), H(mean_curvature(mesh)), B(conormal(mesh)) {}
};

WillmoreOptions energy_only()
{
    WillmoreOptions o;
    o.compute_density = false;
    o.compute_equality = false;
    return o;
}

CriterionResult willmore_equality(Suite)
{
    CriterionResult res{1, "willmore_equality", false, {}, 0.0};
    Stopwatch clock;
    for (const SurfaceFixture& fx : surface_fixtures()) {
        double err[2] = {0.0, 0.0};
        int k = 0;
        for (int n : {96, 128}) {
            Analysis a(fx.mesh(n));
            err[k++] = willmore_energy(a.mesh, a.H, a.B, energy_only()).willmore - kTwoPi;
        }
        res.checks.push_back(near_relative("W_" + fx.name + "_res96", kTwoPi + err[0], kTwoPi, 0.008));
        res.checks.push_back(decreasing("W_refine_" + fx.name, err[0], err[1], 1e-12));
    }
    res.checks.push_back(at_most("runtime_s", clock.seconds(), 30.0));
    return res;
}

CriterionResult li_yau(Suite suite)
{
    CriterionResult res{2, "li_yau", false, {}, 0.0};
    const int count = suite == Suite::Full ? 10 : 3;
    const int n = suite == Suite::Full ? 128 : 96;
    constexpr double radii[3] = {0.5, 1.0, 2.0};
    for (int seed = 1; seed <= count; ++seed) {
        SeededUniform rng(static_cast<std::uint64_t>(seed));
        const double r = radii[seed % 3];
        const int mode = 2 + seed % 2;
        const double amplitude = rng.uniform(0.3, 0.4);
        const double phase = rng.uniform(0.0, kTwoPi);
        Analysis a(make_perturbed_cap(r, n, amplitude, mode, phase));
        const std::string tag = fmt("seed%d", seed);
        res.checks.push_back(
            at_most("admissible_angle_" + tag, free_boundary_admissibility(a.mesh, a.B).max_angle_deg, 2.0));
        const WillmoreReport w = willmore_energy(a.mesh, a.H, a.B);
        Verdict ly = li_yau_check(w, 1e-3);
        ly.name = "li_yau_" + tag;
        res.checks.push_back(ly);
        res.checks.push_back(at_least("margin_" + tag, w.willmore - kTwoPi, 0.05));
    }
    Analysis two(make_two_disks(96, std::numbers::pi / 2));
    const WillmoreReport w = willmore_energy(two.mesh, two.H, two.B);
    res.checks.push_back(near_relative("two_disks_density", w.max_tilde_density, 2.0, 0.05));
    res.checks.push_back(near_relative("two_disks_W", w.willmore, 2.0 * kTwoPi, 0.01));
    return res;
}

CriterionResult monotonicity(Suite suite)
{
    CriterionResult res{3, "monotonicity", false, {}, 0.0};
    const int coarse = suite == Suite::Full ? 96 : 48;
    const int fine = 2 * coarse;
    const std::vector<double> radii = radius_grid(0.2, 4.0, 24);
    std::vector<SurfaceFixture> fixtures = surface_fixtures();
    if (suite == Suite::Quick) fixtures = {fixtures[0], fixtures[2]};
    for (const SurfaceFixture& fx : fixtures) {
        const std::pair<std::string, Vec3> centers[] = {{"origin", {0.0, 0.0, 0.0}},
                                                         {"interior", fx.interior()},
                                                         {"boundary", fx.boundary()},
                                                         {"exterior", 1.1 * fx.boundary()}};
        double residual[4][2] = {};
        int level = 0;
        for (int n : {coarse, fine}) {
            Analysis a(fx.mesh(n));
            const double tol = 10.0 * a.mesh.median_edge_length();
            for (int c = 0; c < 4; ++c) {
                const RadialProfile p = g_profile(a.mesh, a.H, a.B, centers[c].second, radii);
                const MonotonicityVerdict v = monotonicity_check(p, tol);
                const std::string tag = fmt("%s_%s_res%d", fx.name.c_str(), centers[c].first.c_str(), n);
                res.checks.push_back(at_least("increment_" + tag, v.min_increment, -tol));
                res.checks.push_back(at_most("identity_" + tag, v.max_identity_residual, tol));
                residual[c][level] = v.max_identity_residual;
            }
            ++level;
        }
        for (int c = 0; c < 4; ++c) {
            const std::string tag = fx.name + "_" + centers[c].first;
            const double a = residual[c][0];
            const double b = residual[c][1];
            if (std::max(a, b) <= 1e-9) {
                res.checks.push_back({"halving_" + tag, true, b, a, 1e-9});
            } else {
                res.checks.push_back(at_most("halving_ratio_" + tag, b / a, 0.65));
            }
        }
    }
    return res;
}

CriterionResult integral_identity_criterion(Suite)
{
    CriterionResult res{4, "integral_identity", false, {}, 0.0};
    {
        Analysis a(make_flat_disk(96));
        const IntegralIdentity id = integral_identity(a.mesh, a.H, a.B, {0, 0, 0});
        res.checks.push_back(near("disk_origin_defect", id.defect, 0.0, 1e-2));
        res.checks.push_back(near("disk_origin_density", id.density, 1.0, 1e-2));
        res.checks.push_back(near("disk_origin_boundary_term", id.boundary_term, 1.0, 1e-2));
    }
    for (const SurfaceFixture& fx : surface_fixtures(true)) {
        const std::pair<std::string, Vec3> centers[] = {{"origin", {0, 0, 0}}, {"apex", fx.interior()}};
        for (const auto& [label, x0] : centers) {
            double defect[2] = {};
            int k = 0;
            for (int n : {96, 192}) {
                Analysis a(fx.mesh(n));
                defect[k++] = integral_identity(a.mesh, a.H, a.B, x0).defect;
            }
            const std::string tag = fx.name + "_" + label;
            res.checks.push_back(near("defect_" + tag + "_res96", defect[0], 0.0, 2e-2));
            res.checks.push_back(decreasing("defect_refine_" + tag, defect[0], defect[1], 1e-12));
        }
    }
    return res;
}

std::vector<std::pair<std::string, VectorField>> test_fields()
{
    const Vec3 u = normalized(Vec3{1.0, -2.0, 0.5});
    const Vec3 v = normalized(Vec3{0.3, 0.4, -1.0});
    const std::array<Mat3, 3> q = {Mat3::outer(u, u) + Mat3::scaled_identity(0.5),
                                   Mat3::outer(u, v) + Mat3::outer(v, u),
                                   Mat3::outer(v, v) * 2.0 + Mat3::scaled_identity(-0.25)};
    return {{"constant_x", VectorField::constant({1, 0, 0})},
            {"constant_y", VectorField::constant({0, 1, 0})},
            {"constant_z", VectorField::constant({0, 0, 1})},
            {"position", VectorField::position()},
            {"quadratic", VectorField::quadratic(q, rotation({1, 2, 3}, 0.4))}};
}

CriterionResult first_variation(Suite)
{
    CriterionResult res{5, "first_variation", false, {}, 0.0};
    const auto fields = test_fields();
    for (const SurfaceFixture& fx : surface_fixtures()) {
        Analysis coarse(fx.mesh(96));
        Analysis fine(fx.mesh(192));
        for (const auto& [label, X] : fields) {
            const FirstVariationTerms a = first_variation_residual(coarse.mesh, coarse.H, coarse.B, X);
            const FirstVariationTerms b = first_variation_residual(fine.mesh, fine.H, fine.B, X);
            const std::string tag = fx.name + "_" + label;
            res.checks.push_back(at_most("residual_" + tag + "_res96", a.residual, 1e-2));
            res.checks.push_back(decreasing("residual_refine_" + tag, a.residual, b.residual, 1e-10));
            if (fx.r == 1.0 && label == "position") {
                res.checks.push_back(near_relative("cap1_divergence", a.divergence, 3.68061, 0.01));
                res.checks.push_back(near_relative("cap1_mean_curvature", a.mean_curvature, 0.76227, 0.01));
                res.checks.push_back(near_relative("cap1_boundary", a.boundary, 4.44288, 0.01));
            }
        }
    }
    return res;
}

/// Largest principal curvature of x²/a² + y²/b² + z²/c² = 1 over a dense
/// (polar, azimuth) grid, from the closed-form Gauss and mean curvature.
double ellipsoid_curvature_oracle(double a, double b, double c, int steps)
{
    const double abc2 = a * a * b * b * c * c;
    double best = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double phi = std::numbers::pi * i / steps;
        for (int j = 0; j < 2 * steps; ++j) {
            const double theta = std::numbers::pi * j / steps;
            const double x = a * std::sin(phi) * std::cos(theta);
            const double y = b * std::sin(phi) * std::sin(theta);
            const double z = c * std::cos(phi);
            const double p2 = x * x / (a * a * a * a) + y * y / (b * b * b * b) + z * z / (c * c * c * c);
            const double gauss = 1.0 / (abc2 * p2 * p2);
            const double mean = (a * a + b * b + c * c - x * x - y * y - z * z) / (2.0 * abc2 * p2 * std::sqrt(p2));
            best = std::max(best, mean + std::sqrt(std::max(0.0, mean * mean - gauss)));
        }
    }
    return best;
}

CriterionResult ball_curvature(Suite suite)
{
    CriterionResult res{6, "ball_curvature", false, {}, 0.0};
    const SupportSurface sphere = SupportSurface::sphere({0, 0, 0}, 1.0, suite == Suite::Full ? 2000 : 500);
    const BallCurvatureReport rs = ball_curvatures(sphere);
    double upper = 0.0;
    double lower = 0.0;
    for (std::size_t i = 0; i < rs.upper.size(); ++i) {
        upper = std::max(upper, std::abs(rs.upper[i] - 1.0));
        lower = std::max(lower, std::abs(rs.lower[i] - 1.0));
    }
    double z = 0.0;
    const auto& pts = sphere.points();
    for (std::size_t i = 0; i < pts.size(); i += 7) {
        for (std::size_t j = 0; j < pts.size(); j += 11) {
            if (i != j) z = std::max(z, std::abs(z_kernel(pts[i], sphere.normals()[i], pts[j]) - 1.0));
        }
    }
    res.checks.push_back(at_most("sphere_Z_deviation", z, 1e-12));
    res.checks.push_back(at_most("sphere_upper_deviation", upper, 1e-12));
    res.checks.push_back(at_most("sphere_lower_deviation", lower, 1e-12));

    const SupportSurface ell = SupportSurface::ellipsoid(2.0, 1.0, 1.0, 10000);
    const double oracle = ellipsoid_curvature_oracle(2.0, 1.0, 1.0, 400);
    res.checks.push_back(near_relative("ellipsoid_sup_upper", ball_curvatures(ell).sup_upper, oracle, 0.01));
    return res;
}

CriterionResult support_inequality(Suite)
{
    CriterionResult res{7, "support_inequality", false, {}, 0.0};
    const SupportSurface ball = SupportSurface::sphere({0, 0, 0}, 1.0, 500);
    for (const SurfaceFixture& fx : {SurfaceFixture{"disk", 0.0}, SurfaceFixture{"cap1", 1.0}}) {
        Analysis a(fx.mesh(96));
        const SupportInequality s = support_inequality_check(a.mesh, a.H, a.B, ball, 1e-2);
        Verdict v = s.ball_curvature;
        v.name = "inequality_" + fx.name;
        res.checks.push_back(v);
        res.checks.push_back(
            near_relative("equality_" + fx.name, s.quarter_h2 + s.kappa_integral, kTwoPi, 0.01));
    }
    const SupportSurface ell = SupportSurface::ellipsoid(2.0, 1.0, 1.0, 2000);
    Analysis a(make_elliptic_disk(2.0, 1.0, 96));
    const SupportInequality s = support_inequality_check(a.mesh, a.H, a.B, ell, 1e-3);
    res.checks.push_back(at_least("elliptic_disk_margin", s.quarter_h2 + s.kappa_integral - kTwoPi, 1e-6));
    if (s.convex_bound) {
        Verdict v = *s.convex_bound;
        v.name = "elliptic_disk_convex_bound";
        res.checks.push_back(v);
    }
    return res;
}

struct CurveFixture {
    std::string name;
    ClosedPolyline curve;
    bool planar_convex = false;
};

std::vector<CurveFixture> curve_corpus(int n, int random_count)
{
    std::vector<CurveFixture> out;
    out.push_back({"circle", make_circle(1.0, n), true});
    out.push_back({"ellipse", make_ellipse(2.0, 1.0, n), true});
    out.push_back({"trefoil", make_trefoil(n), false});
    for (int s = 1; s <= random_count; ++s) {
        out.push_back({fmt("random%d", s), make_fourier_random(n, static_cast<std::uint64_t>(s)), false});
    }
    return out;
}

CriterionResult tangent_point_energy(Suite suite)
{
    CriterionResult res{8, "tangent_point_energy", false, {}, 0.0};
    Stopwatch clock;
    const int n = suite == Suite::Full ? 512 : 256;
    const std::vector<double> ps{1.5, 2.0, 3.0, 4.0};

    const CurveEnergyReport circle = curve_energy(make_circle(1.0, n), ps);
    res.checks.push_back(near_relative("circle_e1", circle.e1, 4.0 * std::numbers::pi * std::numbers::pi, 0.002));
    for (double p : ps) {
        res.checks.push_back(near_relative(fmt("circle_normalized_p%g", p), circle.normalized_ep.at(p), kTwoPi, 0.002));
    }

    const double e2 = 1.0 - 1.0 / 4.0;
    const double length = 4.0 * 2.0 * std::comp_ellint_2(std::sqrt(e2));
    const CurveEnergyReport ellipse = curve_energy(make_ellipse(2.0, 1.0, n), {2.0});
    res.checks.push_back(near_relative("ellipse_e1", ellipse.e1, kTwoPi * length, 0.005));
    res.checks.push_back(at_least("ellipse_normalized_p2", ellipse.normalized_ep.at(2.0), kTwoPi + 0.05));

    const CurveEnergyReport trefoil = curve_energy(make_trefoil(n));
    res.checks.push_back(at_least("trefoil_ratio", trefoil.e1 / (kTwoPi * trefoil.length), 1.1));

    const int count = suite == Suite::Full ? 20 : 5;
    for (int s = 1; s <= count; ++s) {
        const CurveEnergyReport r = curve_energy(make_fourier_random(n, static_cast<std::uint64_t>(s)), ps);
        Verdict v = length_bound_check(r, 1e-3);
        v.name = fmt("random%d_", s) + v.name;
        res.checks.push_back(v);
        for (Verdict c : normalized_bound_check(r, 1e-3)) {
            c.name = fmt("random%d_", s) + c.name;
            res.checks.push_back(c);
        }
    }
    res.checks.push_back(at_most("runtime_s", clock.seconds(), 60.0));
    return res;
}

CriterionResult pointwise_bound(Suite suite)
{
    CriterionResult res{9, "pointwise_integrals", false, {}, 0.0};
    const int n = suite == Suite::Full ? 512 : 256;
    const double tol = 10.0 / n;
    for (const CurveFixture& fx : curve_corpus(n, suite == Suite::Full ? 20 : 5)) {
        const CurveEnergyReport r = curve_energy(fx.curve);
        const auto [lo, hi] = std::minmax_element(r.per_point_integral.begin(), r.per_point_integral.end());
        res.checks.push_back(at_least("min_" + fx.name, *lo, kTwoPi - tol));
        const double spread = std::max(std::abs(*lo - kTwoPi), std::abs(*hi - kTwoPi));
        const bool equal = spread <= tol;
        res.checks.push_back({"equality_" + fx.name + (fx.planar_convex ? "_expected" : "_absent"),
                              equal == fx.planar_convex, spread, fx.planar_convex ? 0.0 : tol, tol});
    }
    return res;
}

CriterionResult optimizer_sharpness(Suite)
{
    CriterionResult res{10, "optimizer_sharpness", false, {}, 0.0};
    for (int s = 1; s <= 5; ++s) {
        const double err = gradient_check(make_fourier_random(32, static_cast<std::uint64_t>(100 + s)), 2.0);
        res.checks.push_back(at_most(fmt("gradient_check_seed%d", 100 + s), err, 1e-5));
    }
    Stopwatch clock;
    const int n = 128;
    OptimizerConfig config;
    config.p = 2.0;
    const OptimizerTrace trace = minimize(make_perturbed_circle(n, 0.2, 4), config);
    const double seconds = clock.seconds();

    int reached = -1;
    double max_increase = -INFINITY;
    double lowest = INFINITY;
    for (std::size_t i = 0; i < trace.objective.size(); ++i) {
        if (reached < 0 && trace.objective[i] <= 1.01 * kTwoPi) reached = static_cast<int>(i);
        if (i > 0) max_increase = std::max(max_increase, trace.objective[i] - trace.objective[i - 1]);
        lowest = std::min(lowest, trace.objective[i]);
    }
    res.checks.push_back({"reached_within_1pct", reached >= 0 && reached <= 2000, static_cast<double>(reached),
                          2000.0, 0.0});
    res.checks.push_back(near_relative("final_objective", trace.objective.back(), kTwoPi, 0.01));
    res.checks.push_back(at_most("max_increase", max_increase, 0.0));
    res.checks.push_back(at_least("lower_bound", lowest, kTwoPi - 10.0 / n));
    double length_drift = 0.0;
    double objective_drift = 0.0;
    for (const ResampleEvent& e : trace.resamples) {
        if (!e.accepted) continue;
        length_drift = std::max(length_drift, std::abs(e.length_after / e.length_before - 1.0));
        objective_drift = std::max(objective_drift, std::abs(e.objective_after / e.objective_before - 1.0));
    }
    res.checks.push_back(at_most("resample_length_drift", length_drift, 0.005));
    res.checks.push_back(at_most("resample_objective_drift", objective_drift, 0.01));
    res.checks.push_back(at_most("runtime_s", seconds, 300.0));
    return res;
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

CriterionResult invariances(Suite)
{
    CriterionResult res{11, "invariances", false, {}, 0.0};
    const Mat3 rot = rotation({1, 2, 3}, 0.7);
    const double scale = 2.5;
    const ClosedPolyline curve = make_fourier_random(128, 7);
    const std::vector<double> ps{1.5, 2.0, 3.0};
    const CurveEnergyReport base = curve_energy(curve, ps);
    const CurveEnergyReport scaled = curve_energy(curve.transformed(Mat3::identity(), scale, {0.1, -0.2, 0.3}), ps);
    const CurveEnergyReport turned = curve_energy(curve.transformed(rot, 1.0, {}), ps);
    for (const auto& [p, e] : base.ep) {
        res.checks.push_back(
            at_most(fmt("scaling_law_p%g", p), relative_gap(scaled.ep.at(p), std::pow(scale, 2.0 - p) * e), 1e-10));
        res.checks.push_back(at_most(fmt("rotation_ep_p%g", p), relative_gap(turned.ep.at(p), e), 1e-10));
    }
    res.checks.push_back(at_most("normalized_scale_invariance",
                                 relative_gap(objective_value(curve, 2.0),
                                              objective_value(curve.transformed(Mat3::identity(), scale, {}), 2.0)),
                                 1e-10));

    for (const auto& [label, mesh] : {std::pair{std::string("disk"), make_flat_disk(96)},
                                      std::pair{std::string("perturbed_cap"), make_perturbed_cap(1.0, 96, 0.3, 3, 0.5)}}) {
        Analysis a(mesh);
        Analysis b(mesh.transformed(rot, 1.0, {}));
        const double wa = willmore_energy(a.mesh, a.H, a.B, energy_only()).willmore;
        const double wb = willmore_energy(b.mesh, b.H, b.B, energy_only()).willmore;
        res.checks.push_back(at_most("rotation_W_" + label, relative_gap(wa, wb), 1e-10));
    }
    return res;
}

}  // namespace

std::optional<Suite> parse_suite(std::string_view name)
{
    if (name == "quick") return Suite::Quick;
    if (name == "full") return Suite::Full;
    return std::nullopt;
}

CriterionResult run_criterion(int id, Suite suite)
{
    Stopwatch clock;
    CriterionResult res;
    switch (id) {
    case 1: res = willmore_equality(suite); break;
    case 2: res = li_yau(suite); break;
    case 3: res = monotonicity(suite); break;
    case 4: res = integral_identity_criterion(suite); break;
    case 5: res = first_variation(suite); break;
    case 6: res = ball_curvature(suite); break;
    case 7: res = support_inequality(suite); break;
    case 8: res = tangent_point_energy(suite); break;
    case 9: res = pointwise_bound(suite); break;
    case 10: res = optimizer_sharpness(suite); break;
    case 11: res = invariances(suite); break;
    default: throw InvalidArgument(fmt("unknown criterion %d", id));
    }
    res.pass = !res.checks.empty() &&
               std::all_of(res.checks.begin(), res.checks.end(), [](const Verdict& v) { return v.pass; });
    res.seconds = clock.seconds();
    return res;
}

std::vector<CriterionResult> run_acceptance(Suite suite, const CriterionCallback& on_result)
{
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) {
        out.push_back(run_criterion(id, suite));
        if (on_result) on_result(out.back());
    }
    return out;
}

std::string format_criterion(const CriterionResult& result, bool verbose)
{
    const auto passed = std::count_if(result.checks.begin(), result.checks.end(), [](const Verdict& v) { return v.pass; });
    std::string out = fmt("%s %2d %-22s %3zu/%-3zu checks  %8.2f s\n", result.pass ? "PASS" : "FAIL", result.id,
                          result.name.c_str(), static_cast<std::size_t>(passed), result.checks.size(), result.seconds);
    for (const Verdict& v : result.checks) {
        if (v.pass && !verbose) continue;
        out += fmt("       %s %-40s measured %.9g expected %.9g tol %.3g\n", v.pass ? "ok  " : "FAIL", v.name.c_str(),
                   v.measured, v.expected, v.tolerance);
    }
    return out;
}

}  // namespace fbmono
