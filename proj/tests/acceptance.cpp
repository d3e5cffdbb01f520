#include "fbmono/verify.hpp"

#include <iostream>
#include <string>

int main(int argc, char** argv)
{
    const std::string name = argc > 1 ? argv[1] : "full";
    const auto suite = fbmono::parse_suite(name);
    if (!suite) {
        std::cerr << "unknown suite '" << name << "' (expected quick or full)\n";
        return 2;
    }
    const auto results = fbmono::run_acceptance(*suite, [](const fbmono::CriterionResult& r) {
        std::cout << fbmono::format_criterion(r) << std::flush;
    });
    int failed = 0;
    for (const auto& r : results) failed += r.pass ? 0 : 1;
    if (failed == 0) {
        std::cout << "all " << results.size() << " criteria passed\n";
        return 0;
    }
    std::cout << failed << " of " << results.size() << " criteria failed\n";
    return 1;
}
