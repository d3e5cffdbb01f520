#include "fbmono/report.hpp"

#include "fbmono/io.hpp"

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>

namespace fbmono {

using nlohmann::ordered_json;

namespace {

ordered_json vec(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

// JSON has no infinities or NaN; those become null.
ordered_json num(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

ordered_json verdict_json(const Verdict& v)
{
    return {{"name", v.name}, {"pass", v.pass}, {"measured", num(v.measured)}, {"expected", num(v.expected)},
            {"tolerance", num(v.tolerance)}};
}

std::string shortest(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace

struct JsonReport::Impl {
    std::string input;
    ordered_json results = ordered_json::object();
};

JsonReport::JsonReport(std::string input) : impl_(std::make_unique<Impl>())
{
    impl_->input = std::move(input);
}
JsonReport::~JsonReport() = default;
JsonReport::JsonReport(JsonReport&&) noexcept = default;
JsonReport& JsonReport::operator=(JsonReport&&) noexcept = default;

void JsonReport::add(const std::string& key, double value) { impl_->results[key] = num(value); }
void JsonReport::add(const std::string& key, const std::string& value) { impl_->results[key] = value; }

void JsonReport::add(const std::string& key, const WillmoreReport& r)
{
    impl_->results[key] = {{"quarter_h2", r.quarter_h2},
                           {"boundary_term", r.boundary_term},
                           {"willmore_energy", r.willmore},
                           {"boundary_strip_uncertainty", r.boundary_strip},
                           {"max_tilde_density", r.max_tilde_density},
                           {"max_density_point", vec(r.max_density_point)},
                           {"density_confidence", r.density_confidence},
                           {"li_yau_lhs", r.li_yau_lhs},
                           {"embedded_flag_threshold", r.embedded_flag_threshold},
                           {"equality_defect", r.equality_defect},
                           {"equality_center", vec(r.equality_center)},
                           {"tangential_rms", r.tangential_rms}};
}

void JsonReport::add(const std::string& key, const Admissibility& a)
{
    impl_->results[key] = {{"admissible", a.admissible()},
                           {"max_radius_defect", a.max_radius_defect},
                           {"max_angle_deg", a.max_angle_deg},
                           {"radius_tolerance", a.radius_tolerance},
                           {"angle_tolerance_deg", a.angle_tolerance_deg}};
}

void JsonReport::add(const std::string& key, const SupportAdmissibility& a)
{
    impl_->results[key] = {{"admissible", a.admissible()},
                           {"max_level_defect", a.max_level_defect},
                           {"max_angle_deg", a.max_angle_deg},
                           {"angle_tolerance_deg", a.angle_tolerance_deg}};
}

void JsonReport::add(const std::string& key, const RadialProfile& p, const MonotonicityVerdict& v)
{
    ordered_json radii = ordered_json::array();
    ordered_json sums = ordered_json::array();
    for (const auto& r : p.records) {
        radii.push_back(r.r);
        sums.push_back(r.sum);
    }
    impl_->results[key] = {{"center", vec(p.center)},
                           {"radii", radii},
                           {"sum", sums},
                           {"min_increment", num(v.min_increment)},
                           {"max_identity_residual", v.max_identity_residual},
                           {"tolerance", v.tolerance},
                           {"monotone", v.monotone},
                           {"identity", v.identity}};
}

void JsonReport::add(const std::string& key, const DensityEstimate& d)
{
    impl_->results[key] = {{"center", vec(d.center)},
                           {"tilde_density", d.value},
                           {"confidence", d.confidence},
                           {"ladder_value", d.ladder_value},
                           {"radii", d.radii},
                           {"samples", d.samples},
                           {"reflected_samples", d.reflected_samples}};
}

void JsonReport::add(const std::string& key, const IntegralIdentity& id)
{
    impl_->results[key] = {{"center", vec(id.center)},
                           {"defect_center", id.defect_center},
                           {"defect_reflected", id.defect_reflected},
                           {"density", id.density},
                           {"h2_term", id.h2_term},
                           {"boundary_term", id.boundary_term},
                           {"defect", id.defect}};
}

void JsonReport::add(const std::string& key, const FirstVariationTerms& t)
{
    impl_->results[key] = {{"divergence", t.divergence},
                           {"mean_curvature", t.mean_curvature},
                           {"boundary", t.boundary},
                           {"residual", t.residual}};
}

void JsonReport::add(const std::string& key, const SupportInequality& s)
{
    ordered_json j = {{"quarter_h2", s.quarter_h2},
                      {"kappa_integral", s.kappa_integral},
                      {"boundary_length", s.boundary_length},
                      {"ball_curvature", verdict_json(s.ball_curvature)}};
    if (s.convex_bound) {
        j["curvature_bound"] = s.curvature_bound;
        j["convex_bound"] = verdict_json(*s.convex_bound);
    }
    impl_->results[key] = j;
}

void JsonReport::add(const std::string& key, const CurvatureIdentity& c)
{
    impl_->results[key] = {{"density", c.density}, {"defect_integral", c.defect_integral}, {"h2_term", c.h2_term},
                           {"z_term", c.z_term},   {"lhs", c.lhs},                         {"rhs", c.rhs},
                           {"residual", c.residual}};
}

void JsonReport::add(const std::string& key, const CurveEnergyReport& r)
{
    ordered_json ep = ordered_json::object();
    for (const auto& [p, v] : r.ep) ep[shortest(p)] = v;
    ordered_json nep = ordered_json::object();
    for (const auto& [p, v] : r.normalized_ep) nep[shortest(p)] = v;
    impl_->results[key] = {{"length", r.length},
                           {"e1", r.e1},
                           {"ep", ep},
                           {"normalized_ep", nep},
                           {"per_point_integral", r.per_point_integral},
                           {"per_point_dual", r.per_point_dual}};
}

void JsonReport::add(const std::string& key, const OptimizerTrace& t)
{
    ordered_json resamples = ordered_json::array();
    for (const auto& e : t.resamples) {
        resamples.push_back({{"iteration", e.iteration},
                             {"length_before", e.length_before},
                             {"length_after", e.length_after},
                             {"objective_before", e.objective_before},
                             {"objective_after", e.objective_after},
                             {"accepted", e.accepted}});
    }
    impl_->results[key] = {{"iterations", t.objective.empty() ? 0 : t.objective.size() - 1},
                           {"initial_objective", t.objective.empty() ? 0.0 : t.objective.front()},
                           {"final_objective", t.objective.empty() ? 0.0 : t.objective.back()},
                           {"final_length", t.length.empty() ? 0.0 : t.length.back()},
                           {"converged", t.converged},
                           {"line_search_failed", t.line_search_failed},
                           {"stop_reason", t.stop_reason},
                           {"roundness", t.final_curve.size() > 0 ? roundness(t.final_curve) : 0.0},
                           {"resamples", resamples}};
}

void JsonReport::add_verdict(const Verdict& v) { verdicts_.push_back(v); }

bool JsonReport::all_pass() const
{
    for (const Verdict& v : verdicts_) {
        if (!v.pass) return false;
    }
    return true;
}

std::string JsonReport::dump(bool timestamp) const
{
    ordered_json doc;
    doc["tool_version"] = kToolVersion;
    if (timestamp) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::tm tm{};
        gmtime_r(&now, &tm);
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        doc["timestamp"] = buf;
    } else {
        doc["timestamp"] = nullptr;
    }
    doc["input"] = impl_->input;
    doc["results"] = impl_->results;
    ordered_json vs = ordered_json::array();
    for (const Verdict& v : verdicts_) vs.push_back(verdict_json(v));
    doc["verdicts"] = vs;
    return doc.dump(2) + "\n";
}

void save_report(const JsonReport& report, const std::string& path, bool timestamp)
{
    write_text_file(path, report.dump(timestamp));
}

std::string profile_csv(const RadialProfile& profile)
{
    std::string out = "r,g,g_hat,sum,lhs_residual,rhs_diff\n";
    for (const auto& r : profile.records) {
        out += shortest(r.r) + ',' + shortest(r.g) + ',' + shortest(r.g_hat) + ',' + shortest(r.sum) + ',' +
               shortest(r.annulus_lhs) + ',' + shortest(r.delta_rhs) + '\n';
    }
    return out;
}

void save_profile(const RadialProfile& profile, const std::string& path) { write_text_file(path, profile_csv(profile)); }

std::string trace_csv(const OptimizerTrace& trace)
{
    std::string out = "iter,objective,grad_norm,length\n";
    for (std::size_t i = 0; i < trace.objective.size(); ++i) {
        out += std::to_string(i) + ',' + shortest(trace.objective[i]) + ',' + shortest(trace.grad_norm[i]) + ',' +
               shortest(trace.length[i]) + '\n';
    }
    return out;
}

}  // namespace fbmono
