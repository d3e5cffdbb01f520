#pragma once

#include <string>

namespace fbmono {

/// Outcome of one numerical check.
struct Verdict {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
};

}  // namespace fbmono
