#ifndef IRIS_AGING_REPORT_HPP
#define IRIS_AGING_REPORT_HPP

#include <string>
#include <vector>

#include "iris_aging/regression.hpp"

namespace iris_aging {

/// Markdown table, one row per fitted model: a p-value per canonical term
/// column ("--" when the model lacks the term), R^2, and per-day / per-year
/// time slopes. p values below alpha are starred.
std::string reportMarkdown(const std::vector<FitResult>& results, double alpha);

/// Full-precision JSON twin: an array of
/// {model, n, r2, terms: [{name, beta, se, t, p}]}.
std::string reportJson(const std::vector<FitResult>& results);

/// Parses the JSON twin back (for re-rendering reports).
std::vector<FitResult> parseReportJson(const std::string& text);

}  // namespace iris_aging

#endif
