#include "iris_aging/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace iris_aging {

namespace {

// Canonical column order; raw-pair columns are appended only when present.
const std::vector<std::string> kCanonical = {"t",    "OCprod", "|dLC|", "|dIL|",
                                             "|dSH|", "|dPR|",  "|dIR|"};
const std::vector<std::string> kRawOrder = {"OC1", "OC2", "LC1", "LC2", "IL1", "IL2",
                                            "SH1", "SH2", "PR1", "PR2", "IR1", "IR2"};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string columnLabel(const std::string& token) {
  // markdown table cells cannot hold bare pipes
  if (token.size() >= 2 && token.front() == '|' && token.back() == '|')
    return token.substr(1, token.size() - 2);
  return token;
}

const TermStats* findTerm(const FitResult& r, const std::string& token) {
  for (const auto& t : r.terms)
    if (t.name == token) return &t;
  return nullptr;
}

}  // namespace

std::string reportMarkdown(const std::vector<FitResult>& results, double alpha) {
  std::vector<std::string> columns = kCanonical;
  for (const auto& raw : kRawOrder) {
    const bool present = std::any_of(results.begin(), results.end(),
                                     [&](const FitResult& r) { return findTerm(r, raw); });
    if (present) columns.push_back(raw);
  }

  std::string md;
  md += "# Regression report\n\n";
  md += "Per-term two-sided p-values; `--` marks terms not present in the model. ";
  md += "`*` flags p < " + fmt("%g", alpha) + ".\n\n";

  md += "| Model | n |";
  for (const auto& c : columns) md += " " + columnLabel(c) + " |";
  md += " R2 |\n";
  md += "|---|---|";
  for (std::size_t i = 0; i < columns.size(); ++i) md += "---|";
  md += "---|\n";

  for (const FitResult& r : results) {
    md += "| " + r.model + " | " + std::to_string(r.n) + " |";
    for (const auto& c : columns) {
      const TermStats* t = findTerm(r, c);
      if (!t) {
        md += " -- |";
      } else {
        md += " " + fmt("%.4f", t->p) + (t->p < alpha ? "*" : "") + " |";
      }
    }
    md += " " + fmt("%.3f", r.r2) + " |\n";
  }

  md += "\n## Time effect\n\n";
  md += "| Model | slope per day | slope per year |\n|---|---|---|\n";
  for (const FitResult& r : results) {
    const TermStats* t = findTerm(r, "t");
    if (!t) continue;
    md += "| " + r.model + " | " + fmt("%.6g", t->beta) + " | " + fmt("%.3f", t->beta * 365.25) +
          " |\n";
  }
  return md;
}

std::string reportJson(const std::vector<FitResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const FitResult& r : results) {
    nlohmann::json terms = nlohmann::json::array();
    for (const TermStats& t : r.terms)
      terms.push_back({{"name", t.name}, {"beta", t.beta}, {"se", t.se}, {"t", t.t}, {"p", t.p}});
    arr.push_back({{"model", r.model}, {"n", r.n}, {"terms", terms}, {"r2", r.r2}});
  }
  return arr.dump(2) + "\n";
}

std::vector<FitResult> parseReportJson(const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("bad report JSON: ") + e.what());
  }
  if (!arr.is_array()) fail(Errc::ParseError, "report JSON must be an array of fits");
  std::vector<FitResult> out;
  for (const auto& j : arr) {
    FitResult r;
    r.model = j.at("model").get<std::string>();
    r.n = j.at("n").get<long>();
    r.r2 = j.at("r2").get<double>();
    for (const auto& jt : j.at("terms")) {
      TermStats t;
      t.name = jt.at("name").get<std::string>();
      t.beta = jt.at("beta").get<double>();
      t.se = jt.at("se").get<double>();
      t.t = jt.at("t").get<double>();
      t.p = jt.at("p").get<double>();
      r.terms.push_back(std::move(t));
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace iris_aging
