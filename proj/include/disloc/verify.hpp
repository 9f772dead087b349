#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "disloc/diagnostics.hpp"

namespace disloc {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string details;
    double runtime_seconds = 0.0;
    double runtime_limit = 0.0;  ///< 0: no limit
};

struct VerifyOptions {
    /// Restricts every alpha sweep to this single value.
    std::optional<double> alpha;
};

/// Criteria ids run by a named suite: getoor, profile, decay, selfsim, comparison, all.
/// DomainError for any other name.
std::vector<int> suite_criteria(std::string_view suite);

/// Runs acceptance criteria, sharing solver runs between them. Criterion 6 audits the
/// conservation reports of every solver run the session has made, running the missing
/// ones itself.
class VerifySession {
public:
    explicit VerifySession(VerifyOptions options = {});

    CriterionResult run(int id);
    std::vector<CriterionResult> run_all(const std::vector<int>& ids);

private:
    struct RunRecord {
        DiagnosticsSeries series;
        ConservationReport report;
    };

    CriterionResult getoor_identity();
    CriterionResult profile_equation();
    CriterionResult constants();
    CriterionResult self_similar_oracle();
    CriterionResult decay_exponents();
    CriterionResult conservation();
    CriterionResult scaling_covariance();
    CriterionResult comparison();
    CriterionResult self_similar_convergence();
    CriterionResult support_growth();
    CriterionResult functional_inequalities();

    std::vector<double> alphas(std::vector<double> defaults) const;
    void note_run(const std::string& label, const DiagnosticsSeries& series);

    VerifyOptions options_;
    std::map<std::string, RunRecord> runs_;
    std::map<int, bool> done_;
    std::optional<DiagnosticsSeries> box_support_;  // box run recorded with the guard threshold
};

/// CSV with one row per criterion: id,name,passed,runtime_seconds,runtime_limit,details.
std::string render_report(const std::vector<CriterionResult>& results);

}  // namespace disloc
