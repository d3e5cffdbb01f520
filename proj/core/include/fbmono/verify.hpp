#pragma once

#include "fbmono/verdict.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fbmono {

enum class Suite { Quick, Full };

std::optional<Suite> parse_suite(std::string_view name);

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::vector<Verdict> checks;
    double seconds = 0.0;
};

using CriterionCallback = std::function<void(const CriterionResult&)>;

/// Number of acceptance criteria; ids run from 1 to this value.
inline constexpr int kCriterionCount = 11;

/// Runs one criterion. The quick suite uses coarser fixtures with the same
/// tolerances. Throws InvalidArgument for an unknown id.
CriterionResult run_criterion(int id, Suite suite);

/// Runs every criterion in order, invoking `on_result` after each.
std::vector<CriterionResult> run_acceptance(Suite suite, const CriterionCallback& on_result = {});

/// "PASS  3 monotonicity (12.4 s)" followed by the failing checks, if any.
std::string format_criterion(const CriterionResult& result, bool verbose = false);

}  // namespace fbmono
