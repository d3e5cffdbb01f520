#pragma once

#include "fbmono/monotonicity.hpp"
#include "fbmono/optimizer.hpp"
#include "fbmono/support.hpp"
#include "fbmono/tangent_point.hpp"
#include "fbmono/verdict.hpp"
#include "fbmono/willmore.hpp"

#include <memory>
#include <string>
#include <vector>

namespace fbmono {

inline constexpr const char* kToolVersion = "0.1.0";

/// Report document:
///   {"tool_version", "timestamp", "input", "results": {...}, "verdicts": [...]}
/// Numbers are written with round-trip precision, so identical inputs give
/// identical bytes apart from the timestamp.
class JsonReport {
public:
    explicit JsonReport(std::string input);
    ~JsonReport();
    JsonReport(JsonReport&&) noexcept;
    JsonReport& operator=(JsonReport&&) noexcept;

    void add(const std::string& key, double value);
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, const WillmoreReport& r);
    void add(const std::string& key, const Admissibility& a);
    void add(const std::string& key, const SupportAdmissibility& a);
    void add(const std::string& key, const RadialProfile& p, const MonotonicityVerdict& v);
    void add(const std::string& key, const DensityEstimate& d);
    void add(const std::string& key, const IntegralIdentity& id);
    void add(const std::string& key, const FirstVariationTerms& t);
    void add(const std::string& key, const SupportInequality& s);
    void add(const std::string& key, const CurvatureIdentity& c);
    void add(const std::string& key, const CurveEnergyReport& r);
    void add(const std::string& key, const OptimizerTrace& t);

    void add_verdict(const Verdict& v);
    const std::vector<Verdict>& verdicts() const { return verdicts_; }
    bool all_pass() const;

    /// Serialized document; the timestamp is omitted when `timestamp` is false.
    std::string dump(bool timestamp = true) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::vector<Verdict> verdicts_;
};

/// Writes the JSON document. Throws IoError on failure.
void save_report(const JsonReport& report, const std::string& path, bool timestamp = true);

/// CSV with header r,g,g_hat,sum,lhs_residual,rhs_diff and one row per radius.
std::string profile_csv(const RadialProfile& profile);
void save_profile(const RadialProfile& profile, const std::string& path);

/// CSV with header iter,objective,grad_norm,length.
std::string trace_csv(const OptimizerTrace& trace);

}  // namespace fbmono
