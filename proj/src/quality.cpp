#include "iris_aging/quality.hpp"

namespace iris_aging {

char familyChar(Family f) {
  switch (f) {
    case Family::D: return 'D';
    case Family::B: return 'B';
    case Family::V: return 'V';
  }
  return '?';
}

Family familyFromString(const std::string& s) {
  if (s == "D" || s == "d") return Family::D;
  if (s == "B" || s == "b") return Family::B;
  if (s == "V" || s == "v") return Family::V;
  fail(Errc::BadConfig, "unknown family '" + s + "' (expected D, B or V)");
}

namespace {

long long requireValidCount(const BitMask& mask) {
  const long long n = mask.count();
  if (n == 0) fail(Errc::DegenerateMask, "no valid pixels under the mask");
  return n;
}

void requireSameShape(const GrayImage& img, const BitMask& mask) {
  if (img.rows() != mask.rows() || img.cols() != mask.cols())
    fail(Errc::BadConfig, "mask dimensions differ from image");
}

}  // namespace

double computeOcclusion(const PolarIris& polar) {
  const double nm = static_cast<double>(polar.mask.size());
  if (nm == 0) fail(Errc::BadConfig, "empty polar iris");
  const double n_valid = static_cast<double>(polar.mask.count());
  return (nm - n_valid) / nm;
}

double computeLocalContrast(const GrayImage& img, const BitMask& mask) {
  requireSameShape(img, mask);
  const long long n = requireValidCount(mask);
  const GrayImage med = medianFilter10x10(img);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < img.rows(); ++i)
    for (Eigen::Index j = 0; j < img.cols(); ++j)
      if (mask(i, j)) {
        const double d = double(img(i, j)) - double(med(i, j));
        acc += d * d;
      }
  return std::sqrt(acc / double(n));
}

double computeIllumination(const GrayImage& img, const BitMask& mask) {
  requireSameShape(img, mask);
  const long long n = requireValidCount(mask);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < img.rows(); ++i)
    for (Eigen::Index j = 0; j < img.cols(); ++j)
      if (mask(i, j)) acc += double(img(i, j));
  return acc / double(n);
}

double computeSharpness(const GrayImage& img, const BitMask& mask, double sigma) {
  requireSameShape(img, mask);
  const long long n = requireValidCount(mask);
  const FloatImage response = logFilter(img, sigma);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < img.rows(); ++i)
    for (Eigen::Index j = 0; j < img.cols(); ++j)
      if (mask(i, j)) acc += response(i, j);
  return acc / double(n);
}

double computeSharpnessAbs(const GrayImage& img, const BitMask& mask, double sigma) {
  requireSameShape(img, mask);
  const long long n = requireValidCount(mask);
  const FloatImage response = logFilter(img, sigma);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < img.rows(); ++i)
    for (Eigen::Index j = 0; j < img.cols(); ++j)
      if (mask(i, j)) acc += std::abs(response(i, j));
  return acc / double(n);
}

QualityVector qualityForMatcher(const GrayImage& img, const PolarIris* polar, Family family,
                                double sigma) {
  QualityVector q;
  if (family == Family::D) {
    if (!polar) fail(Errc::MissingPolar, "family D quality needs the polar iris");
    q.oc = computeOcclusion(*polar);
    q.lc = computeLocalContrast(polar->texture, polar->mask);
    q.il = computeIllumination(polar->texture, polar->mask);
    q.sh = computeSharpness(polar->texture, polar->mask, sigma);
  } else {
    const BitMask full = fullMask(img.rows(), img.cols());
    q.oc = std::nullopt;
    q.lc = computeLocalContrast(img, full);
    q.il = computeIllumination(img, full);
    q.sh = computeSharpness(img, full, sigma);
  }
  return q;
}

}  // namespace iris_aging
