#include "iris_aging/regression.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "iris_aging/stats.hpp"

namespace iris_aging {

const char* covariateName(Covariate c) {
  switch (c) {
    case Covariate::OC: return "OC";
    case Covariate::LC: return "LC";
    case Covariate::IL: return "IL";
    case Covariate::SH: return "SH";
    case Covariate::PR: return "PR";
    case Covariate::IR: return "IR";
  }
  return "?";
}

Covariate covariateFromName(const std::string& s) {
  if (s == "OC") return Covariate::OC;
  if (s == "LC") return Covariate::LC;
  if (s == "IL") return Covariate::IL;
  if (s == "SH") return Covariate::SH;
  if (s == "PR") return Covariate::PR;
  if (s == "IR") return Covariate::IR;
  fail(Errc::ParseError, "unknown covariate '" + s + "'");
}

std::string Term::token() const {
  switch (kind) {
    case Kind::Intercept: return "1";
    case Kind::Time: return "t";
    case Kind::Raw: return std::string(covariateName(cov)) + (which == 1 ? "1" : "2");
    case Kind::AbsDiff: return "|d" + std::string(covariateName(cov)) + "|";
    case Kind::AbsProd: return std::string(covariateName(cov)) + "prod";
  }
  return "?";
}

Term termFromToken(const std::string& token) {
  if (token == "1") return Term::intercept();
  if (token == "t") return Term::time();
  if (token.size() == 5 && token.front() == '|' && token.back() == '|' && token[1] == 'd')
    return Term::absDiff(covariateFromName(token.substr(2, 2)));
  if (token.size() == 6 && token.substr(2) == "prod")
    return Term::absProd(covariateFromName(token.substr(0, 2)));
  if (token.size() == 3 && (token.back() == '1' || token.back() == '2'))
    return Term::raw(covariateFromName(token.substr(0, 2)), token.back() == '1' ? 1 : 2);
  fail(Errc::ParseError, "unknown model term '" + token + "'");
}

namespace {

double covariateValue(const ComparisonRecord& rec, Covariate cov, int which) {
  const QualityVector& q = which == 1 ? rec.q1 : rec.q2;
  const std::optional<GeometryVector>& g = which == 1 ? rec.g1 : rec.g2;
  const std::string where =
      std::string(covariateName(cov)) + std::to_string(which) + " for pair " + rec.id1 + " / " +
      rec.id2;
  switch (cov) {
    case Covariate::OC:
      if (!q.oc) fail(Errc::MissingCovariate, "absent " + where);
      return *q.oc;
    case Covariate::LC: return q.lc;
    case Covariate::IL: return q.il;
    case Covariate::SH: return q.sh;
    case Covariate::PR:
      if (!g) fail(Errc::MissingCovariate, "absent " + where);
      return g->pr;
    case Covariate::IR:
      if (!g) fail(Errc::MissingCovariate, "absent " + where);
      return g->ir;
  }
  fail(Errc::MissingCovariate, "absent " + where);
}

}  // namespace

double termValue(const Term& term, const ComparisonRecord& rec) {
  switch (term.kind) {
    case Term::Kind::Intercept: return 1.0;
    case Term::Kind::Time: return double(rec.dt_days);
    case Term::Kind::Raw: return covariateValue(rec, term.cov, term.which);
    case Term::Kind::AbsDiff:
      return std::abs(covariateValue(rec, term.cov, 1) - covariateValue(rec, term.cov, 2));
    case Term::Kind::AbsProd:
      return std::abs(covariateValue(rec, term.cov, 1) * covariateValue(rec, term.cov, 2));
  }
  return 0.0;
}

void ModelSpec::validate() const {
  if (terms.empty() || terms.front() != Term::intercept())
    fail(Errc::BadConfig, name + ": first term must be the intercept");
  int timeCount = 0;
  std::vector<Term> rawSeen;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Term& t = terms[i];
    if (t.kind == Term::Kind::Intercept && i != 0)
      fail(Errc::BadConfig, name + ": duplicate intercept");
    if (t.kind == Term::Kind::Time) {
      ++timeCount;
      if (i != 1) fail(Errc::BadConfig, name + ": time term must come right after the intercept");
    }
    if (t.kind == Term::Kind::AbsProd && t.cov != Covariate::OC)
      fail(Errc::BadConfig, name + ": AbsProd is defined for OC only");
    if (t.kind == Term::Kind::AbsDiff && t.cov == Covariate::OC)
      fail(Errc::BadConfig, name + ": OC pairs combine by AbsProd, not AbsDiff");
    if (t.kind == Term::Kind::Raw) rawSeen.push_back(t);

    const bool usesOc = (t.kind != Term::Kind::Intercept && t.kind != Term::Kind::Time) &&
                        t.cov == Covariate::OC;
    const bool usesGeom = (t.kind != Term::Kind::Intercept && t.kind != Term::Kind::Time) &&
                          (t.cov == Covariate::PR || t.cov == Covariate::IR);
    if (usesOc && family != Family::D)
      fail(Errc::BadConfig, name + ": OC terms are only available in family D");
    if (usesGeom && family == Family::V)
      fail(Errc::BadConfig, name + ": family V models exclude PR/IR terms");
  }
  if (timeCount > 1) fail(Errc::BadConfig, name + ": time may appear at most once");
  for (const Term& t : rawSeen) {
    const Term partner = Term::raw(t.cov, t.which == 1 ? 2 : 1);
    if (std::find(rawSeen.begin(), rawSeen.end(), partner) == rawSeen.end())
      fail(Errc::BadConfig,
           name + ": raw term " + t.token() + " lacks its (1,2) partner");
  }
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      if (terms[i] == terms[j])
        fail(Errc::BadConfig, name + ": duplicate term " + terms[i].token());
}

ModelSpec parseModelSpec(const std::string& line) {
  const auto colon = line.find(':');
  const auto lb = line.find('[');
  const auto rb = line.rfind(']');
  if (colon == std::string::npos || lb == std::string::npos || rb == std::string::npos || rb < lb)
    fail(Errc::ParseError, "model spec must look like 'name: F [t, |dLC|, ...]'");

  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };

  ModelSpec spec;
  spec.name = trim(line.substr(0, colon));
  spec.family = familyFromString(trim(line.substr(colon + 1, lb - colon - 1)));
  if (spec.name.empty()) fail(Errc::ParseError, "model spec has an empty name");

  spec.terms.push_back(Term::intercept());
  std::stringstream body(line.substr(lb + 1, rb - lb - 1));
  std::string tok;
  while (std::getline(body, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    const Term t = termFromToken(tok);
    if (t == Term::intercept()) continue;  // implicit
    spec.terms.push_back(t);
  }
  spec.validate();
  return spec;
}

std::string formatModelSpec(const ModelSpec& spec) {
  std::string out = spec.name + ": " + familyChar(spec.family) + std::string(" [");
  bool first = true;
  for (const Term& t : spec.terms) {
    if (t == Term::intercept()) continue;
    if (!first) out += ", ";
    out += t.token();
    first = false;
  }
  return out + "]";
}

std::vector<ModelSpec> parseModelFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  std::vector<ModelSpec> specs;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    try {
      specs.push_back(parseModelSpec(line));
    } catch (const Error& e) {
      fail(Errc::ParseError, path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return specs;
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> designMatrix(
    const std::vector<ComparisonRecord>& records, const ModelSpec& spec) {
  if (records.empty()) fail(Errc::EmptyInput, spec.name + ": no records to fit");
  const Eigen::Index n = Eigen::Index(records.size());
  const Eigen::Index p = Eigen::Index(spec.terms.size());
  Eigen::MatrixXd X(n, p);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const ComparisonRecord& rec = records[std::size_t(i)];
    for (Eigen::Index j = 0; j < p; ++j) X(i, j) = termValue(spec.terms[std::size_t(j)], rec);
    y(i) = rec.score;
  }
  return {std::move(X), std::move(y)};
}

FitResult fitOls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  if (y.size() != n) fail(Errc::BadConfig, "X and y row counts differ");
  if (n <= p)
    fail(Errc::Underdetermined, "need n > p, got n = " + std::to_string(n) +
                                    ", p = " + std::to_string(p));

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  const Eigen::MatrixXd R =
      qr.matrixR().topLeftCorner(p, p).template triangularView<Eigen::Upper>();
  const double rmax = std::abs(R(0, 0));
  if (rmax == 0.0) fail(Errc::RankDeficient, "design matrix is identically zero");
  std::vector<int> deficient;
  for (Eigen::Index j = 0; j < p; ++j)
    if (std::abs(R(j, j)) < 1e-10 * rmax) deficient.push_back(int(qr.colsPermutation().indices()(j)));
  if (!deficient.empty()) {
    std::string cols;
    for (int c : deficient) cols += (cols.empty() ? "" : ", ") + std::to_string(c);
    fail(Errc::RankDeficient, "design matrix is rank deficient (columns " + cols + ")");
  }

  FitResult fit;
  fit.n = long(n);
  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd resid = y - X * beta;
  const double ssres = resid.squaredNorm();
  const double df = double(n - p);
  fit.residual_variance = ssres / df;

  // (X^T X)^-1 = P R^-1 R^-T P^T
  const Eigen::MatrixXd rinv =
      R.template triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd cov =
      qr.colsPermutation() * (rinv * rinv.transpose()) * qr.colsPermutation().transpose();

  const double ybar = y.mean();
  const double sstot = (y.array() - ybar).matrix().squaredNorm();
  fit.r2 = sstot > 0.0 ? 1.0 - ssres / sstot : (ssres <= 1e-24 ? 1.0 : 0.0);

  const double s = std::sqrt(fit.residual_variance);
  fit.terms.resize(std::size_t(p));
  for (Eigen::Index j = 0; j < p; ++j) {
    TermStats& ts = fit.terms[std::size_t(j)];
    ts.beta = beta(j);
    ts.se = s * std::sqrt(std::max(0.0, cov(j, j)));
    if (ts.se > 0.0) {
      ts.t = ts.beta / ts.se;
      ts.p = studentTSf(ts.t, df);
    } else {
      // exact fit: zero residual variance
      ts.t = ts.beta == 0.0 ? 0.0 : std::numeric_limits<double>::infinity() *
                                        (ts.beta > 0 ? 1.0 : -1.0);
      ts.p = ts.beta == 0.0 ? 1.0 : 0.0;
    }
  }
  return fit;
}

FitResult fitModel(const std::vector<ComparisonRecord>& records, const ModelSpec& spec) {
  spec.validate();
  auto [X, y] = designMatrix(records, spec);

  // canonical row order, so the result is bit-identical under any
  // permutation of the input records
  std::vector<Eigen::Index> idx(std::size_t(X.rows()));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index j = 0; j < X.cols(); ++j)
      if (X(a, j) != X(b, j)) return X(a, j) < X(b, j);
    return y(a) < y(b);
  });
  Eigen::MatrixXd Xs(X.rows(), X.cols());
  Eigen::VectorXd ys(y.size());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    Xs.row(i) = X.row(idx[std::size_t(i)]);
    ys(i) = y(idx[std::size_t(i)]);
  }

  FitResult fit = fitOls(Xs, ys);
  fit.model = spec.name;
  for (std::size_t j = 0; j < spec.terms.size(); ++j) fit.terms[j].name = spec.terms[j].token();
  return fit;
}

}  // namespace iris_aging
