#ifndef IRIS_AGING_REGRESSION_HPP
#define IRIS_AGING_REGRESSION_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "iris_aging/dataset.hpp"

namespace iris_aging {

enum class Covariate { OC, LC, IL, SH, PR, IR };

const char* covariateName(Covariate c);
Covariate covariateFromName(const std::string& s);

/// One column of a model design matrix.
///   Intercept        -> 1
///   Time             -> dt_days
///   Raw(C, k)        -> C_k                     (k in {1,2})
///   AbsDiff(C)       -> |C_1 - C_2|             (C != OC)
///   AbsProd(OC)      -> |OC_1 * OC_2|
struct Term {
  enum class Kind { Intercept, Time, Raw, AbsDiff, AbsProd };

  Kind kind = Kind::Intercept;
  Covariate cov = Covariate::OC;
  int which = 1;  // Raw only

  static Term intercept() { return {Kind::Intercept, Covariate::OC, 1}; }
  static Term time() { return {Kind::Time, Covariate::OC, 1}; }
  static Term raw(Covariate c, int which) { return {Kind::Raw, c, which}; }
  static Term absDiff(Covariate c) { return {Kind::AbsDiff, c, 1}; }
  static Term absProd(Covariate c) { return {Kind::AbsProd, c, 1}; }

  /// DSL token: "1", "t", "LC1", "|dLC|", "OCprod".
  std::string token() const;

  bool operator==(const Term& o) const = default;
};

/// Token -> term; the intercept token "1" is accepted but normally implicit.
Term termFromToken(const std::string& token);

/// Column value of a term for one comparison record.
double termValue(const Term& term, const ComparisonRecord& rec);

struct ModelSpec {
  std::string name;
  Family family = Family::D;
  std::vector<Term> terms;  // Intercept first, Time (if any) second

  /// Enforces the family constraints (B: no OC; V: no OC, no PR/IR), term
  /// ordering, Raw-pair completeness and Time multiplicity.
  void validate() const;
};

/// Text form: `name: family [t, |dLC|, OCprod, LC1, LC2, |dPR|]`.
/// The intercept is implicit.
ModelSpec parseModelSpec(const std::string& line);
std::string formatModelSpec(const ModelSpec& spec);

/// Parses one spec per non-empty, non-'#' line.
std::vector<ModelSpec> parseModelFile(const std::string& path);

/// The built-in model catalog: D0-D11, B0-B9, V0-V11 and the three finals.
const std::vector<ModelSpec>& catalog();

/// Catalog lookup by name; UnknownModel lists the valid names.
const ModelSpec& catalogModel(const std::string& name);

struct TermStats {
  std::string name;  // term token
  double beta = 0;
  double se = 0;
  double t = 0;
  double p = 1;
};

struct FitResult {
  std::string model;
  long n = 0;
  std::vector<TermStats> terms;
  double r2 = 0;
  double residual_variance = 0;
};

/// Assembles X (one column per term, in term order) and y (= score).
std::pair<Eigen::MatrixXd, Eigen::VectorXd> designMatrix(
    const std::vector<ComparisonRecord>& records, const ModelSpec& spec);

/// Householder-QR least squares with per-coefficient standard errors,
/// t statistics, two-sided p values and R^2 about the mean of y.
FitResult fitOls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

FitResult fitModel(const std::vector<ComparisonRecord>& records, const ModelSpec& spec);

}  // namespace iris_aging

#endif
