#pragma once

#include <functional>
#include <string>
#include <vector>

namespace lienard::acceptance {

/**
 * One verification criterion of the library-wide suite.  `passed`
 * already folds in the runtime budget: a criterion whose substance
 * holds but that overran its budget fails, with the overrun recorded
 * in `detail`.  budget_seconds == 0 means the criterion is untimed.
 */
struct CriterionResult {
    std::string name;
    bool passed = false;
    double seconds = 0.0;
    double budget_seconds = 0.0;
    std::string detail;
};

/// Registry order of the suite.
std::vector<std::string> criterion_names();

using Progress = std::function<void(const CriterionResult&)>;

/**
 * Runs every criterion whose name contains name_filter (all when the
 * filter is empty), in registry order, invoking on_done after each.
 * A criterion that throws is reported as failed with the exception
 * text; the suite always runs to completion.
 */
std::vector<CriterionResult> run_suite(const std::string& name_filter = "",
                                       const Progress& on_done = {});

/// "PASS  delta-identities        (0.01 s)  42 slot determinants exact"
std::string format_line(const CriterionResult& r);

} // namespace lienard::acceptance

namespace lienard {
using acceptance::CriterionResult;
using acceptance::criterion_names;
using acceptance::format_line;
using acceptance::run_suite;
} // namespace lienard
