#ifndef IRIS_AGING_SYNTH_HPP
#define IRIS_AGING_SYNTH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "iris_aging/dataset.hpp"
#include "iris_aging/regression.hpp"

namespace iris_aging {

/// Synthetic dataset generator. Everything is keyed off `seed` through
/// per-class / per-image / per-pair counter streams, so output is
/// reproducible and independent of generation order.
struct SynthConfig {
  std::uint64_t seed = 1;
  int n_classes = 8;
  int images_per_class = 4;
  std::string date_start = "2003-01-01";
  std::string date_end = "2011-12-31";
  int image_size = 256;        // square Cartesian frames
  double texture_noise = 6.0;  // per-capture intensity perturbation, gray levels
  // Texture drift per elapsed day: each class owns a fixed +-1 drift pattern
  // and capture k receives (date_k - date_start) * aging_drift of it, so
  // in-class texture differences grow with the pair's time lapse.
  double aging_drift = 0.0;
  // Max eyelid depth as a fraction of the iris radius. When > 0 every image
  // gets a mask raster with a lid band of random depth in [0, occlusion*IR],
  // so the occlusion covariate varies across captures.
  double occlusion = 0.0;

  // score model: base + slope * dt_days + sum(effects * term value) + N(0, sigma)
  double base_score = 0.08;
  double time_slope = 0.0;
  double noise_sigma = 0.0;
  std::vector<std::pair<Term, double>> covariate_effects;
};

SynthConfig synthConfigFromJson(const std::string& text);
SynthConfig loadSynthConfig(const std::string& path);

struct SynthDataset {
  std::vector<ManifestEntry> entries;  // image_path left relative: images/<id>.pgm
  std::vector<GrayImage> images;       // parallel to entries
  std::vector<BitMask> masks;          // parallel; empty unless cfg.occlusion > 0
};

/// Band-limited per-class base textures with per-capture perturbations,
/// valid random circles (PR in [18,40], IR in [2.2 PR, 3.2 PR]) and capture
/// dates uniform over the configured range.
SynthDataset generateManifest(const SynthConfig& cfg);

/// Synthesizes genuine-pair scores. Geometry-covariate effects evaluate from
/// the manifest circles; quality-covariate effects need `covariates` rows
/// (from the quality stage), otherwise MissingCovariate.
std::vector<ScoreRow> generateScores(const std::vector<GenuinePair>& pairs,
                                     const std::vector<ManifestEntry>& entries,
                                     const SynthConfig& cfg,
                                     const std::vector<CovariateRow>* covariates = nullptr);

}  // namespace iris_aging

#endif
