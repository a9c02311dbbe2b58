#ifndef IRIS_AGING_QUALITY_HPP
#define IRIS_AGING_QUALITY_HPP

#include <optional>
#include <string>

#include "iris_aging/filters.hpp"
#include "iris_aging/image.hpp"

namespace iris_aging {

/// Matcher family. D codes are computed here (polar domain, occlusion mask);
/// B and V scores are ingested from external files and their image covariates
/// are taken over the whole Cartesian frame.
enum class Family { D, B, V };

char familyChar(Family f);
Family familyFromString(const std::string& s);

struct QualityVector {
  std::optional<double> oc;  // occluded fraction; only defined in the polar domain
  double lc = 0;             // RMS deviation from the local 10x10 median
  double il = 0;             // mean intensity of valid pixels
  double sh = 0;             // mean signed LoG response of valid pixels
};

struct GeometryVector {
  double pr = 0;  // pupil radius, px
  double ir = 0;  // iris radius, px
};

/// (n*m - N) / (n*m) over the polar mask.
double computeOcclusion(const PolarIris& polar);

/// sqrt(sum over valid pixels of (I - M)^2 / N); the median image M is taken
/// over all pixels, valid or not.
double computeLocalContrast(const GrayImage& img, const BitMask& mask);

double computeIllumination(const GrayImage& img, const BitMask& mask);

/// Mean signed LoG response over valid pixels.
double computeSharpness(const GrayImage& img, const BitMask& mask, double sigma = kDefaultLogSigma);

/// Mean |LoG| variant. The signed mean of a zero-sum filter hovers near zero
/// on natural textures, so this is the quantity that orders sharp vs blurred;
/// regression inputs use the signed form above.
double computeSharpnessAbs(const GrayImage& img, const BitMask& mask,
                           double sigma = kDefaultLogSigma);

/// Family D: metrics over the polar texture and mask, OC included.
/// Families B/V: metrics over the full Cartesian image, OC absent.
QualityVector qualityForMatcher(const GrayImage& img, const PolarIris* polar, Family family,
                                double sigma = kDefaultLogSigma);

}  // namespace iris_aging

#endif
