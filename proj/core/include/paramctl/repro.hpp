#pragma once

#include <string>
#include <vector>

namespace paramctl::repro {

/// One reproduction target: a named experiment with pinned tolerances.
struct CriterionResult {
    std::string id;
    bool pass = false;
    std::vector<std::string> details; // one line per checked condition
    double seconds = 0.0;

    std::string summary_line() const; // "[PASS] id: ..." / "[FAIL] id: ..."
};

std::vector<std::string> criterion_ids();

/// Runs one criterion. workers = 0 uses all hardware threads. The master
/// seed is fixed per criterion; PARAMCTL_SEED overrides it when set.
CriterionResult run_criterion(const std::string& id, int workers = 0);

} // namespace paramctl::repro
