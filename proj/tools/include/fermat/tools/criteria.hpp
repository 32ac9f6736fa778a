#pragma once

#include <string>
#include <vector>

namespace fermat::tools {

struct Check {
    std::string label;
    double measured;
    double limit;
    bool pass;
    bool timing = false;  ///< wall-clock measurement; varies run to run
};

struct CriterionOutcome {
    int id;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;

    bool pass() const;
    /// Compact "label=measured (<= limit)" list of the failing checks, or of
    /// all checks when everything passed.  Without timings the measured
    /// runtimes are omitted so that the text is reproducible.
    std::string summary(bool include_timing = true) const;
};

/// Runs acceptance criterion `id` (1..9).  Never throws: library errors are
/// reported as a failing check.
CriterionOutcome run_criterion(int id);

std::vector<CriterionOutcome> run_all_criteria();

constexpr int criterion_count = 9;

}  // namespace fermat::tools
