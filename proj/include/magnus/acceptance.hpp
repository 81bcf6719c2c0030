#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace magnus {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs every criterion whose name contains `filter` (all when empty).
std::vector<CriterionResult> run_acceptance(const std::string& filter = "");

// One "PASS"/"FAIL" line per result; returns the number of failures.
int report_acceptance(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace magnus
