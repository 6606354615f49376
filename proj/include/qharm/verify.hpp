#pragma once

#include <string>
#include <vector>

#include "qharm/config.hpp"

namespace qharm {

// One measured quantity against its threshold.  Informational items are
// reported but never fail a run.
struct CheckItem {
    std::string name;
    double measured = 0;
    double tolerance = 0;
    bool pass = true;
    bool informational = false;
    std::string detail;
};

// Acceptance criteria 1..13.  Each run also records its wall time against
// the criterion's time limit (0 = none).
struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<CheckItem> items;
    double seconds = 0;
    double time_limit = 0;
    bool passed() const;
};

constexpr int kCriterionCount = 13;
CriterionResult run_criterion(int id, const RunConfig& cfg);

struct SuiteResult {
    std::string suite;
    std::vector<CriterionResult> criteria;
    std::vector<CheckItem> extras; // suite-specific checks beyond the criteria
    double seconds = 0;
    bool passed() const;
};

// hopf, relations, haar, orthogonality, contraction, classical-limit, plancherel, all
const std::vector<std::string>& suite_names();
// Throws DomainError for an unknown suite.
SuiteResult run_suite(const std::string& suite, const RunConfig& cfg);

}  // namespace qharm
