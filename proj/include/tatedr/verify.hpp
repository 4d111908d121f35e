#pragma once

#include <string>
#include <vector>

namespace tatedr {

/// One named check inside a verification suite. `detail` states what was
/// compared and what came out, so a failing run is diagnosable from the
/// report alone.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass = false;
};

/// Suite names in run order. Each suite is deterministic: randomized checks
/// use fixed seeds.
const std::vector<std::string>& verifySuiteNames();

/// Runs the named suite, or every suite for "all". Unknown selectors throw
/// std::invalid_argument.
std::vector<SuiteReport> runVerify(const std::string& selector);

}  // namespace tatedr
