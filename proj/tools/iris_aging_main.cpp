#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "iris_aging/pipeline.hpp"

using namespace iris_aging;

namespace {

int jobsDefault() {
  if (const char* env = std::getenv("IRIS_AGING_JOBS")) {
    const int j = std::atoi(env);
    if (j >= 1) return j;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(hw) : 1;
}

Family parseFamily(const std::string& s) { return familyFromString(s); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iris-aging: covariate extraction, iris matching and aging regression"};
  app.require_subcommand(1);

  // ---- synth
  SynthStage synth;
  std::uint64_t seed = 0;
  auto* cmdSynth = app.add_subcommand("synth", "generate a seeded synthetic dataset");
  cmdSynth->add_option("--config", synth.config_path, "synth config JSON");
  cmdSynth->add_option("--out", synth.out_dir, "output directory")->required();
  cmdSynth->add_option("--seed", seed, "override the config seed");
  cmdSynth->add_option("--scores", synth.scores_out, "also write a genuine-pair score CSV here");

  // ---- normalize
  NormalizeStage norm;
  auto* cmdNorm = app.add_subcommand("normalize", "rubber-sheet unwrap to polar rasters");
  cmdNorm->add_option("--manifest", norm.manifest, "manifest CSV")->required();
  cmdNorm->add_option("--out", norm.out_dir, "output directory (gets a polar/ subdir)")->required();
  cmdNorm->add_option("--rows", norm.grid.rows, "radial samples");
  cmdNorm->add_option("--cols", norm.grid.cols, "full-circle angular samples");
  cmdNorm->add_option("--jobs", norm.jobs, "worker threads");

  // ---- quality
  QualityStage qual;
  std::string qualFamily = "D";
  auto* cmdQual = app.add_subcommand("quality", "per-image quality/geometry covariates");
  cmdQual->add_option("--manifest", qual.manifest, "manifest CSV")->required();
  cmdQual->add_option("--family", qualFamily, "matcher family: D, B or V");
  cmdQual->add_option("--polar", qual.polar_dir, "directory of normalized polar rasters");
  cmdQual->add_option("--out", qual.out_csv, "covariate CSV to write")->required();
  cmdQual->add_option("--sigma", qual.sigma, "LoG sigma for sharpness");
  cmdQual->add_option("--rows", qual.grid.rows, "radial samples (when unwrapping inline)");
  cmdQual->add_option("--cols", qual.grid.cols, "angular samples (when unwrapping inline)");
  cmdQual->add_option("--jobs", qual.jobs, "worker threads");

  // ---- match
  MatchStage match;
  auto* cmdMatch = app.add_subcommand("match", "encode and match all genuine pairs");
  cmdMatch->add_option("--manifest", match.manifest, "manifest CSV")->required();
  cmdMatch->add_option("--polar", match.polar_dir, "directory of normalized polar rasters");
  cmdMatch->add_option("--out", match.out_csv, "score CSV to write")->required();
  cmdMatch->add_option("--max-rotation", match.max_rotation, "rotation tolerance, grid columns");
  cmdMatch->add_option("--grid-rows", match.encoder.grid_rows, "code grid rows");
  cmdMatch->add_option("--grid-cols", match.encoder.grid_cols, "code grid columns");
  cmdMatch->add_option("--rows", match.grid.rows, "radial samples (when unwrapping inline)");
  cmdMatch->add_option("--cols", match.grid.cols, "angular samples (when unwrapping inline)");
  cmdMatch->add_option("--save-codes", match.codes_dir, "dump IAC1 iris codes here");
  cmdMatch->add_option("--jobs", match.jobs, "worker threads");

  // ---- pairs
  PairsStage pairs;
  std::string pairsFamily = "D";
  auto* cmdPairs = app.add_subcommand("pairs", "assemble genuine-pair comparison records");
  cmdPairs->add_option("--manifest", pairs.manifest, "manifest CSV")->required();
  cmdPairs->add_option("--scores", pairs.scores_csv, "score CSV")->required();
  cmdPairs->add_option("--covariates", pairs.covariates_csv, "covariate CSV")->required();
  cmdPairs->add_option("--family", pairsFamily, "matcher family: D, B or V");
  cmdPairs->add_option("--out", pairs.out_csv, "records CSV to write")->required();

  // ---- fit
  FitStage fit;
  std::string fitFamily = "D";
  std::vector<std::string> fitModels;
  auto* cmdFit = app.add_subcommand("fit", "fit regression models and write reports");
  cmdFit->add_option("--records", fit.records_csv, "records CSV")->required();
  cmdFit->add_option("--family", fitFamily, "matcher family: D, B or V");
  cmdFit->add_option("--models", fitModels, "model names (comma separated)")->delimiter(',');
  cmdFit->add_flag("--catalog", fit.use_catalog, "fit every catalog model of the family");
  cmdFit->add_option("--models-file", fit.models_file, "extra model definitions (DSL)");
  cmdFit->add_option("--alpha", fit.alpha, "significance level");
  cmdFit->add_option("--out", fit.out_dir, "report directory")->required();
  bool fitNoMd = false, fitNoJson = false;
  cmdFit->add_flag("--no-markdown", fitNoMd, "skip report.md");
  cmdFit->add_flag("--no-json", fitNoJson, "skip report.json");

  // ---- report
  ReportStage rep;
  auto* cmdRep = app.add_subcommand("report", "re-render a report from report.json");
  cmdRep->add_option("--fits", rep.fits_json, "report.json from a fit run")->required();
  cmdRep->add_option("--alpha", rep.alpha, "significance level");
  cmdRep->add_option("--out", rep.out_dir, "report directory")->required();
  bool repNoMd = false, repNoJson = false;
  cmdRep->add_flag("--no-markdown", repNoMd, "skip report.md");
  cmdRep->add_flag("--no-json", repNoJson, "skip report.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    // usage errors also get the flag listing of the failing scope
    CLI::App* scope = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    std::cerr << scope->help() << "\n";
    return 1;
  }

  const int jobs = jobsDefault();
  try {
    if (cmdSynth->parsed()) {
      if (cmdSynth->count("--seed")) synth.seed_override = seed;
      runSynth(synth);
    } else if (cmdNorm->parsed()) {
      if (!cmdNorm->count("--jobs")) norm.jobs = jobs;
      runNormalize(norm);
    } else if (cmdQual->parsed()) {
      qual.family = parseFamily(qualFamily);
      if (!cmdQual->count("--jobs")) qual.jobs = jobs;
      runQuality(qual);
    } else if (cmdMatch->parsed()) {
      if (!cmdMatch->count("--jobs")) match.jobs = jobs;
      runMatch(match);
    } else if (cmdPairs->parsed()) {
      pairs.family = parseFamily(pairsFamily);
      runPairs(pairs);
    } else if (cmdFit->parsed()) {
      fit.family = parseFamily(fitFamily);
      fit.models = fitModels;
      fit.markdown = !fitNoMd;
      fit.json = !fitNoJson;
      if (!fit.use_catalog && fit.models.empty())
        fail(Errc::UnknownModel, "no models given; pass --models NAME,... or --catalog");
      runFit(fit);
    } else if (cmdRep->parsed()) {
      rep.markdown = !repNoMd;
      rep.json = !repNoJson;
      runReport(rep);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    // configuration/selection mistakes are usage errors; broken data is not
    const bool usage = e.code() == Errc::UnknownModel || e.code() == Errc::BadConfig;
    return usage ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
