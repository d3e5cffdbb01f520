#include "fbmono/error.hpp"
#include "fbmono/io.hpp"
#include "fbmono/optimizer.hpp"
#include "fbmono/parallel.hpp"
#include "fbmono/report.hpp"
#include "fbmono/shapes.hpp"
#include "fbmono/support.hpp"
#include "fbmono/tangent_point.hpp"
#include "fbmono/verify.hpp"
#include "fbmono/willmore.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace fbmono;

namespace {

enum ExitCode : int {
    kSuccess = 0,
    kVerdictFailed = 1,
    kInvalidInput = 2,
    kInadmissible = 3,
    kNotConverged = 4,
};

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct GlobalOptions {
    int threads = 0;
    bool reproducible = false;
};

std::vector<double> split_numbers(const std::string& text, std::size_t expected, const std::string& what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidArgument(what + ": cannot parse '" + text + "'");
        }
    }
    if (expected != 0 && out.size() != expected) {
        throw InvalidArgument(what + ": expected " + std::to_string(expected) + " comma-separated numbers");
    }
    return out;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    std::string kind = "flat-disk";
    ShapeSpec spec;
    std::string output;
};

int run_generate(const GenerateArgs& args)
{
    ShapeSpec spec = args.spec;
    const auto kind = parse_shape_kind(args.kind);
    if (!kind) throw InvalidArgument("kind: unknown shape '" + args.kind + "'");
    spec.kind = *kind;
    spec.validate();
    const Shape shape = generate_shape(spec);
    if (const auto* mesh = std::get_if<TriangleMesh>(&shape)) {
        save_off(args.output, *mesh);
        std::printf("wrote %s: %s, %d vertices, %d faces, area %.5f", args.output.c_str(), args.kind.c_str(),
                    mesh->vertex_count(), mesh->face_count(), mesh->total_area());
        if (spec.kind == ShapeKind::SphericalCap) std::printf(" (analytic %.5f)", spherical_cap_area(spec.r));
        std::printf("\n");
    } else {
        const auto& curve = std::get<ClosedPolyline>(shape);
        save_curve(args.output, curve);
        std::printf("wrote %s: %s, %d vertices, length %.6f\n", args.output.c_str(), args.kind.c_str(), curve.size(),
                    curve.length());
    }
    return kSuccess;
}

// --------------------------------------------------------- analyze-surface

struct AnalyzeArgs {
    std::string mesh_path;
    std::vector<std::string> centers{"0,0,0"};
    double r_min = 0.2;
    double r_max = 4.0;
    int r_count = 24;
    std::string support = "sphere";
    int support_samples = 2000;
    double monotonicity_factor = 10.0;
    double li_yau_factor = 10.0;
    double angle_tolerance = 2.0;
    bool keep_tangential = false;
    std::string report = "report.json";
    std::string profile_prefix = "profile";
};

SupportSurface parse_support(const std::string& text, int samples)
{
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const std::string params = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (name == "sphere") {
        const double radius = params.empty() ? 1.0 : split_numbers(params, 1, "support")[0];
        return SupportSurface::sphere({0, 0, 0}, radius, samples);
    }
    if (name == "ellipsoid") {
        const auto ax = split_numbers(params, 3, "support");
        return SupportSurface::ellipsoid(ax[0], ax[1], ax[2], samples);
    }
    throw InvalidArgument("support: expected sphere[:R] or ellipsoid:a,b,c, got '" + text + "'");
}

Vec3 parse_center(const std::string& text, const TriangleMesh& mesh, const BoundaryField& B)
{
    if (text == "boundary") return mesh.vertex(B.vertices.front());
    const auto v = split_numbers(text, 3, "center");
    return {v[0], v[1], v[2]};
}

int run_analyze(const AnalyzeArgs& args, const GlobalOptions& global)
{
    const TriangleMesh mesh = load_mesh(args.mesh_path);
    const MeanCurvatureField H = mean_curvature(mesh, {.project_to_normal = !args.keep_tangential});
    const BoundaryField B = conormal(mesh);
    const SupportSurface support = parse_support(args.support, args.support_samples);
    const double h = mesh.median_edge_length();

    const Admissibility adm = support.kind() == SupportSurface::Kind::Sphere &&
                                      norm(support.center()) == 0.0 && support.axes().x == 1.0
                                  ? free_boundary_admissibility(mesh, B, 1e-6, args.angle_tolerance)
                                  : Admissibility{};
    const SupportAdmissibility sadm = support_admissibility(mesh, B, support, args.angle_tolerance);
    if (!adm.admissible() || !sadm.admissible()) {
        std::fprintf(stderr,
                     "inadmissible mesh: max |x|-1 = %.3g, max angle(eta, x) = %.3g deg, "
                     "max support level defect = %.3g, max angle(eta, gamma) = %.3g deg (limit %.3g deg)\n",
                     adm.max_radius_defect, adm.max_angle_deg, sadm.max_level_defect, sadm.max_angle_deg,
                     args.angle_tolerance);
        return kInadmissible;
    }

    JsonReport report(args.mesh_path);
    report.add("admissibility", adm);
    report.add("support_admissibility", sadm);
    report.add("support", support.describe());
    report.add("median_edge_length", h);

    const WillmoreReport w = willmore_energy(mesh, H, B);
    report.add("willmore", w);
    const double li_yau_tol = std::max(1e-3, args.li_yau_factor * h * h);
    report.add_verdict(li_yau_check(w, li_yau_tol));
    report.add_verdict(origin_li_yau_check(mesh, w, li_yau_tol));
    std::printf("willmore %.6f (quarter_h2 %.6f, boundary %.6f), max tilde density %.5f, equality defect %.4g\n",
                w.willmore, w.quarter_h2, w.boundary_term, w.max_tilde_density, w.equality_defect);

    const std::vector<double> radii = radius_grid(args.r_min, args.r_max, args.r_count);
    const double mono_tol = args.monotonicity_factor * h;
    for (std::size_t i = 0; i < args.centers.size(); ++i) {
        const Vec3 c = parse_center(args.centers[i], mesh, B);
        const RadialProfile profile = g_profile(mesh, H, B, c, radii);
        const MonotonicityVerdict v = monotonicity_check(profile, mono_tol);
        const std::string tag = std::to_string(i);
        report.add("profile_" + tag, profile, v);
        report.add("density_" + tag, tilde_density(mesh, c));
        report.add("identity_" + tag, integral_identity(mesh, H, B, c));
        report.add_verdict({"monotone_" + tag, v.monotone, v.min_increment, -mono_tol, 0.0});
        report.add_verdict({"profile_identity_" + tag, v.identity, v.max_identity_residual, mono_tol, 0.0});
        save_profile(profile, args.profile_prefix + "_" + tag + ".csv");
        std::printf("center %s: min increment %.3g, identity residual %.3g (tol %.3g)\n", args.centers[i].c_str(),
                    v.min_increment, v.max_identity_residual, mono_tol);
    }

    const SupportInequality s = support_inequality_check(mesh, H, B, support, li_yau_tol);
    report.add("support_inequality", s);
    report.add_verdict(s.ball_curvature);
    if (s.convex_bound) report.add_verdict(*s.convex_bound);

    save_report(report, args.report, !global.reproducible);
    for (const Verdict& v : report.verdicts()) {
        std::printf("%s %-28s measured %.8g expected %.8g\n", v.pass ? "PASS" : "FAIL", v.name.c_str(), v.measured,
                    v.expected);
    }
    return report.all_pass() ? kSuccess : kVerdictFailed;
}

// ------------------------------------------------------------ curve-energy

struct CurveEnergyArgs {
    std::string curve_path;
    std::vector<double> p{2.0};
    double tolerance = 1e-3;
    double equality_tolerance = 5e-3;
    std::string report = "curve_report.json";
};

int run_curve_energy(const CurveEnergyArgs& args, const GlobalOptions& global)
{
    ClosedPolyline curve;
    try {
        curve = load_curve(args.curve_path);
    } catch (const ParseError& e) {
        throw InvalidArgument(std::string("curve file: ") + e.what());
    }
    const CurveEnergyReport r = curve_energy(curve, args.p);
    JsonReport report(args.curve_path);
    report.add("curve_energy", r);
    const double e1_tol = args.tolerance * kTwoPi * r.length;
    report.add_verdict(length_bound_check(r, e1_tol));
    report.add("length_bound_equality", length_bound_equality(r, args.equality_tolerance * kTwoPi * r.length) ? "yes" : "no");
    for (const Verdict& v : normalized_bound_check(r, args.tolerance * kTwoPi)) report.add_verdict(v);
    save_report(report, args.report, !global.reproducible);

    std::printf("length %.6f, E1 %.6f, E1/(2 pi L) %.6f\n", r.length, r.e1, r.e1 / (kTwoPi * r.length));
    for (const auto& [p, v] : r.normalized_ep) std::printf("p %g: normalized %.6f (2 pi = %.6f)\n", p, v, kTwoPi);
    for (const Verdict& v : report.verdicts()) {
        std::printf("%s %-20s measured %.8g expected %.8g\n", v.pass ? "PASS" : "FAIL", v.name.c_str(), v.measured,
                    v.expected);
    }
    return report.all_pass() ? kSuccess : kVerdictFailed;
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
    std::string curve_path;
    OptimizerConfig config;
    std::string step_rule = "bb";
    std::string trace = "trace.csv";
    std::string output = "final_curve.json";
    std::string report = "optimize_report.json";
};

int run_optimize(OptimizeArgs args, const GlobalOptions& global)
{
    if (args.step_rule == "bb") {
        args.config.step_rule = StepRule::BarzilaiBorwein;
    } else if (args.step_rule == "grow") {
        args.config.step_rule = StepRule::Grow;
    } else {
        throw InvalidArgument("step-rule: expected bb or grow");
    }
    args.config.validate();
    ClosedPolyline curve;
    try {
        curve = load_curve(args.curve_path);
    } catch (const ParseError& e) {
        throw InvalidArgument(std::string("curve file: ") + e.what());
    }
    const OptimizerTrace trace = minimize(curve, args.config);
    write_text_file(args.trace, trace_csv(trace));
    save_curve(args.output, trace.final_curve);
    JsonReport report(args.curve_path);
    report.add("optimizer", trace);
    save_report(report, args.report, !global.reproducible);

    std::printf("%s after %zu iterations: objective %.8f (2 pi = %.8f), roundness %.6f\n", trace.stop_reason.c_str(),
                trace.objective.size() - 1, trace.objective.back(), kTwoPi, roundness(trace.final_curve));
    if (trace.line_search_failed || !trace.converged) return kNotConverged;
    return kSuccess;
}

// ------------------------------------------------------------------ verify

int run_verify(const std::string& suite_name, bool verbose)
{
    const auto suite = parse_suite(suite_name);
    if (!suite) throw InvalidArgument("suite: expected quick or full, got '" + suite_name + "'");
    bool all = true;
    run_acceptance(*suite, [&](const CriterionResult& r) {
        all = all && r.pass;
        std::fputs(format_criterion(r, verbose).c_str(), stdout);
        std::fflush(stdout);
    });
    std::printf("%s\n", all ? "all criteria pass" : "some criteria failed");
    return all ? kSuccess : kVerdictFailed;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Free-boundary monotonicity and tangent-point energy toolkit"};
    app.set_version_flag("--version", kToolVersion);
    app.set_config("--config", "", "Read options from a key = value file");
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--threads", global.threads, "Worker threads for parallel loops")
        ->envname("FBMONO_THREADS")
        ->check(CLI::PositiveNumber);
    app.add_flag("--reproducible", global.reproducible, "Single worker and no timestamp in reports");

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write a fixture surface (OFF) or curve (JSON)");
    generate->add_option("--kind", gen.kind, "Shape kind")->capture_default_str();
    generate->add_option("--resolution", gen.spec.resolution, "Boundary vertices or curve vertices")
        ->capture_default_str();
    generate->add_option("--r", gen.spec.r, "Cap or circle radius")->capture_default_str();
    generate->add_option("--a", gen.spec.a, "First semi-axis")->capture_default_str();
    generate->add_option("--b", gen.spec.b, "Second semi-axis")->capture_default_str();
    generate->add_option("--amplitude", gen.spec.amplitude, "Perturbation amplitude")->capture_default_str();
    generate->add_option("--mode", gen.spec.mode, "Perturbation mode")->capture_default_str();
    generate->add_option("--phase", gen.spec.phase, "Perturbation phase")->capture_default_str();
    generate->add_option("--tilt", gen.spec.tilt, "Angle between the two disks")->capture_default_str();
    generate->add_option("--seed", gen.spec.seed, "Seed for random curves")->capture_default_str();
    generate->add_option("-o,--output", gen.output, "Output path")->required();

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze-surface", "Willmore, density and monotonicity report for a mesh");
    analyze->add_option("mesh", an.mesh_path, "Mesh file (.off or .obj)")->required();
    analyze->add_option("--center", an.centers, "Center x,y,z or 'boundary' (repeatable)")->capture_default_str();
    analyze->add_option("--r-min", an.r_min, "Smallest radius")->capture_default_str()->check(CLI::PositiveNumber);
    analyze->add_option("--r-max", an.r_max, "Largest radius")->capture_default_str()->check(CLI::PositiveNumber);
    analyze->add_option("--r-count", an.r_count, "Number of radii")->capture_default_str()->check(CLI::Range(2, 10000));
    analyze->add_option("--support", an.support, "sphere[:R] or ellipsoid:a,b,c")->capture_default_str();
    analyze->add_option("--support-samples", an.support_samples, "Support sample count")
        ->capture_default_str()
        ->check(CLI::Range(2, 1000000));
    analyze->add_option("--monotonicity-factor", an.monotonicity_factor, "Profile tolerance in units of h")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    analyze->add_option("--li-yau-factor", an.li_yau_factor, "Li-Yau tolerance in units of h^2 (floor 1e-3)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    analyze->add_option("--angle-tolerance", an.angle_tolerance, "Admissibility angle in degrees")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    analyze->add_flag("--keep-tangential", an.keep_tangential, "Use H without projecting onto the vertex normal");
    analyze->add_option("--report", an.report, "Report JSON path")->capture_default_str();
    analyze->add_option("--profile-prefix", an.profile_prefix, "Profile CSV prefix")->capture_default_str();

    CurveEnergyArgs ce;
    auto* energy = app.add_subcommand("curve-energy", "Tangent-point energies of a closed curve");
    energy->add_option("curve", ce.curve_path, "Curve JSON")->required();
    energy->add_option("--p", ce.p, "Exponents in (1, 8]")->capture_default_str();
    energy->add_option("--tolerance", ce.tolerance, "Relative inequality tolerance")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    energy->add_option("--equality-tolerance", ce.equality_tolerance, "Relative equality tolerance")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    energy->add_option("--report", ce.report, "Report JSON path")->capture_default_str();

    OptimizeArgs op;
    auto* optimize = app.add_subcommand("optimize", "Minimize the normalized tangent-point energy");
    optimize->add_option("curve", op.curve_path, "Curve JSON")->required();
    optimize->add_option("--p", op.config.p, "Exponent, must exceed 1")->capture_default_str();
    optimize->add_option("--max-iters", op.config.max_iters, "Iteration limit")->capture_default_str();
    optimize->add_option("--initial-step", op.config.initial_step, "First trial step (times L^2)")
        ->capture_default_str();
    optimize->add_option("--shrink", op.config.shrink, "Backtracking factor")->capture_default_str();
    optimize->add_option("--growth", op.config.growth, "Step growth for the grow rule")->capture_default_str();
    optimize->add_option("--sufficient-decrease", op.config.sufficient_decrease, "Armijo constant")
        ->capture_default_str();
    optimize->add_option("--tolerance", op.config.tolerance, "Relative objective change to stop")
        ->capture_default_str();
    optimize->add_option("--gradient-tolerance", op.config.gradient_tolerance, "Scaled gradient norm to stop")
        ->capture_default_str();
    optimize->add_option("--resample-every", op.config.resample_every, "Resampling period (0 disables)")
        ->capture_default_str();
    optimize->add_option("--step-rule", op.step_rule, "bb or grow")->capture_default_str();
    optimize->add_option("--seed", op.config.seed, "Seed")->capture_default_str();
    optimize->add_option("--trace", op.trace, "Trace CSV path")->capture_default_str();
    optimize->add_option("-o,--output", op.output, "Final curve JSON path")->capture_default_str();
    optimize->add_option("--report", op.report, "Report JSON path")->capture_default_str();

    std::string suite;
    bool verbose = false;
    auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
    verify->add_option("suite", suite, "quick or full")->required();
    verify->add_flag("-v,--verbose", verbose, "List every check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalidInput;
    }

    if (global.reproducible) {
        set_parallelism_width(1);
    } else if (global.threads > 0) {
        set_parallelism_width(global.threads);
    }

    try {
        if (*generate) return run_generate(gen);
        if (*analyze) return run_analyze(an, global);
        if (*energy) return run_curve_energy(ce, global);
        if (*optimize) return run_optimize(op, global);
        if (*verify) return run_verify(suite, verbose);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInvalidInput;
    }
    return kInvalidInput;
}
