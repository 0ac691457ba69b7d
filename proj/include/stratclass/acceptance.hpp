#pragma once

#include <string>
#include <vector>

// Bound-verification suites shared by `stratclass verify-bounds` and the
// acceptance test binary.
namespace stratclass::acceptance {

struct CheckResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string bound;     // the inequality or identity being checked
    std::string measured;  // what the run produced
};

inline constexpr int kCriterionCount = 14;

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
// Criteria belonging to a suite ("all" lists every criterion).
std::vector<int> suite_criteria(const std::string& name);

CheckResult run_criterion(int id);

// "PASS AC3 title | bound: ... | measured: ..."
std::string format_result(const CheckResult& r);

}  // namespace stratclass::acceptance
