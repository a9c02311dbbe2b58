#ifndef IRIS_AGING_PIPELINE_HPP
#define IRIS_AGING_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "iris_aging/matcher.hpp"
#include "iris_aging/polar.hpp"
#include "iris_aging/regression.hpp"
#include "iris_aging/synth.hpp"

namespace iris_aging {

/// Batch stages behind the CLI subcommands. Every stage reads and writes only
/// the documented CSV/JSON/PGM artifacts, so stages compose across processes.

struct SynthStage {
  std::string config_path;  // empty = built-in defaults
  std::string out_dir;
  std::optional<std::uint64_t> seed_override;
  std::string scores_out;  // also synthesize a genuine-pair score CSV
};
void runSynth(const SynthStage& o);

struct NormalizeStage {
  std::string manifest;
  std::string out_dir;  // writes <out>/polar/<id>.pgm and <id>.mask.pgm
  PolarGrid grid;
  int jobs = 1;
};
void runNormalize(const NormalizeStage& o);

struct QualityStage {
  std::string manifest;
  std::string polar_dir;  // empty = unwrap on the fly (family D)
  Family family = Family::D;
  std::string out_csv;
  double sigma = kDefaultLogSigma;
  PolarGrid grid;
  int jobs = 1;
};
void runQuality(const QualityStage& o);

struct MatchStage {
  std::string manifest;
  std::string polar_dir;  // empty = unwrap on the fly
  std::string out_csv;
  EncoderConfig encoder;
  int max_rotation = 8;
  PolarGrid grid;
  std::string codes_dir;  // optional IAC1 dump
  int jobs = 1;
};
void runMatch(const MatchStage& o);

struct PairsStage {
  std::string manifest;
  std::string scores_csv;
  std::string covariates_csv;
  Family family = Family::D;
  std::string out_csv;
};
void runPairs(const PairsStage& o);

struct FitStage {
  std::string records_csv;
  Family family = Family::D;
  std::vector<std::string> models;  // empty + use_catalog -> whole family catalog
  bool use_catalog = false;
  std::string models_file;  // optional DSL file with extra model definitions
  double alpha = 0.05;
  std::string out_dir;  // report.md + report.json
  bool markdown = true;
  bool json = true;
};
std::vector<FitResult> runFit(const FitStage& o);

struct ReportStage {
  std::string fits_json;
  double alpha = 0.05;
  std::string out_dir;
  bool markdown = true;
  bool json = true;
};
void runReport(const ReportStage& o);

/// Resolves a path found in a manifest against the manifest's directory.
std::string resolveManifestPath(const std::string& manifest, const std::string& path);

}  // namespace iris_aging

#endif
