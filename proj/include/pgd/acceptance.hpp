#pragma once

#include <string>
#include <vector>

namespace pgd::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    double value = 0.0;     // headline measured quantity
    double expected = 0.0;  // its target
    double tol = 0.0;       // tolerance applied to the headline comparison
    bool pass = false;
    std::string detail;  // all sub-checks in text form
};

/// Runs the full acceptance suite. Every criterion is evaluated even if
/// earlier ones fail; exceptions are captured as failures.
std::vector<CriterionResult> run_all();

/// One "PASS criterion N: name -- detail" line per criterion.
std::string render_report(const std::vector<CriterionResult>& results);

/// Deterministic CSV table of the results (schema comment + header row).
std::string render_csv(const std::vector<CriterionResult>& results);

/// Flat JSON map criterion -> {value, expected, tol, pass}.
std::string render_json(const std::vector<CriterionResult>& results);

}  // namespace pgd::acceptance
