#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ite::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    double time_limit = 0.0;  // 0: no limit
};

struct Options {
    unsigned workers = 1;
};

/// Runs every acceptance criterion at its pinned tolerance. A criterion with a
/// time limit fails when it overruns.
std::vector<CriterionResult> run_all(const Options& options,
                                     const std::function<void(const CriterionResult&)>& on_result = {});

/// One "PASS/FAIL" line per criterion.
std::string format_line(const CriterionResult& r);
std::string format_table(const std::vector<CriterionResult>& results);

}  // namespace ite::acceptance
