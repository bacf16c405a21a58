#pragma once

#include <string>
#include <vector>

namespace hz {

struct CheckResult {
    std::string name;
    bool pass = false;
    bool optional_info = false; // informational line, not gating
    double observed = 0;
    double tolerance = 0;
    std::string detail;
};

/// Acceptance suites; "all" runs every suite. Each entry prints one
/// pass/fail line in the runners.
std::vector<CheckResult> run_suite(const std::string& suite, int threads = 1);
std::vector<std::string> suite_names();

} // namespace hz
