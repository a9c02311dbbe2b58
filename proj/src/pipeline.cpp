#include "iris_aging/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "iris_aging/image_io.hpp"
#include "iris_aging/parallel.hpp"
#include "iris_aging/quality.hpp"
#include "iris_aging/report.hpp"

namespace fs = std::filesystem;

namespace iris_aging {

namespace {

void ensureDir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(Errc::IoError, "cannot create directory " + dir + ": " + ec.message());
}

PolarIris polarForEntry(const ManifestEntry& e, const std::string& manifest,
                        const std::string& polar_dir, const PolarGrid& grid) {
  if (!polar_dir.empty()) {
    PolarIris polar;
    polar.texture = readPgm((fs::path(polar_dir) / (e.image_id + ".pgm")).string());
    polar.mask = readMaskPgm((fs::path(polar_dir) / (e.image_id + ".mask.pgm")).string());
    return polar;
  }
  const GrayImage img = loadGrayImage(resolveManifestPath(manifest, e.image_path));
  if (!e.mask_path.empty()) {
    const BitMask mask = readMaskPgm(resolveManifestPath(manifest, e.mask_path));
    return unwrapToPolar(img, e.seg, &mask, grid);
  }
  return unwrapToPolar(img, e.seg, nullptr, grid);
}

}  // namespace

std::string resolveManifestPath(const std::string& manifest, const std::string& path) {
  const fs::path p(path);
  if (p.is_absolute()) return path;
  return (fs::path(manifest).parent_path() / p).string();
}

void runSynth(const SynthStage& o) {
  SynthConfig cfg = o.config_path.empty() ? SynthConfig{} : loadSynthConfig(o.config_path);
  if (o.seed_override) cfg.seed = *o.seed_override;

  ensureDir(o.out_dir);
  ensureDir((fs::path(o.out_dir) / "images").string());

  const SynthDataset data = generateManifest(cfg);
  if (!data.masks.empty()) ensureDir((fs::path(o.out_dir) / "masks").string());
  for (std::size_t i = 0; i < data.entries.size(); ++i) {
    writePgm(data.images[i], (fs::path(o.out_dir) / data.entries[i].image_path).string());
    if (!data.masks.empty())
      writeMaskPgm(data.masks[i], (fs::path(o.out_dir) / data.entries[i].mask_path).string());
  }
  writeManifest(data.entries, (fs::path(o.out_dir) / "manifest.csv").string());

  if (!o.scores_out.empty()) {
    const auto pairs = genuinePairs(data.entries);
    writeScoresCsv(generateScores(pairs, data.entries, cfg), o.scores_out);
  }
}

void runNormalize(const NormalizeStage& o) {
  const auto entries = loadManifest(o.manifest);
  const std::string dir = (fs::path(o.out_dir) / "polar").string();
  ensureDir(dir);
  parallelFor(entries.size(), o.jobs, [&](std::size_t i) {
    const ManifestEntry& e = entries[i];
    const PolarIris polar = polarForEntry(e, o.manifest, "", o.grid);
    writePgm(polar.texture, (fs::path(dir) / (e.image_id + ".pgm")).string());
    writeMaskPgm(polar.mask, (fs::path(dir) / (e.image_id + ".mask.pgm")).string());
  });
}

void runQuality(const QualityStage& o) {
  const auto entries = loadManifest(o.manifest);
  std::vector<CovariateRow> rows(entries.size());
  parallelFor(entries.size(), o.jobs, [&](std::size_t i) {
    const ManifestEntry& e = entries[i];
    CovariateRow row;
    row.image_id = e.image_id;
    row.family = o.family;
    QualityVector q;
    if (o.family == Family::D) {
      const PolarIris polar = polarForEntry(e, o.manifest, o.polar_dir, o.grid);
      q = qualityForMatcher(polar.texture, &polar, Family::D, o.sigma);
    } else {
      const GrayImage img = loadGrayImage(resolveManifestPath(o.manifest, e.image_path));
      q = qualityForMatcher(img, nullptr, o.family, o.sigma);
    }
    row.oc = q.oc;
    row.lc = q.lc;
    row.il = q.il;
    row.sh = q.sh;
    row.pr = e.seg.pupil_r;
    row.ir = e.seg.iris_r;
    rows[i] = std::move(row);
  });
  std::sort(rows.begin(), rows.end(),
            [](const CovariateRow& a, const CovariateRow& b) { return a.image_id < b.image_id; });
  writeCovariatesCsv(rows, o.out_csv);
}

void runMatch(const MatchStage& o) {
  const auto entries = loadManifest(o.manifest);

  std::vector<IrisCode> codes(entries.size());
  parallelFor(entries.size(), o.jobs, [&](std::size_t i) {
    const PolarIris polar = polarForEntry(entries[i], o.manifest, o.polar_dir, o.grid);
    codes[i] = encode(polar, o.encoder);
  });

  if (!o.codes_dir.empty()) {
    ensureDir(o.codes_dir);
    for (std::size_t i = 0; i < entries.size(); ++i)
      saveIrisCode(codes[i], (fs::path(o.codes_dir) / (entries[i].image_id + ".iac")).string());
  }

  std::map<std::string, std::size_t> indexById;
  for (std::size_t i = 0; i < entries.size(); ++i) indexById[entries[i].image_id] = i;

  const auto pairs = genuinePairs(entries);
  std::vector<ScoreRow> rows(pairs.size());
  parallelFor(pairs.size(), o.jobs, [&](std::size_t i) {
    const GenuinePair& p = pairs[i];
    const MatchResult m =
        matchCodes(codes[indexById.at(p.id1)], codes[indexById.at(p.id2)], o.max_rotation);
    rows[i] = {p.id1, p.id2, m.hd};
  });
  writeScoresCsv(rows, o.out_csv);
}

void runPairs(const PairsStage& o) {
  const auto entries = loadManifest(o.manifest);
  const auto pairs = genuinePairs(entries);
  const auto scores = readScoresCsv(o.scores_csv);
  const auto covariates = readCovariatesCsv(o.covariates_csv);
  writeRecordsCsv(buildRecords(pairs, scores, covariates, o.family), o.out_csv);
}

std::vector<FitResult> runFit(const FitStage& o) {
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) fail(Errc::BadConfig, "alpha must lie in (0, 1)");
  const auto records = readRecordsCsv(o.records_csv);

  std::vector<ModelSpec> extra;
  if (!o.models_file.empty()) extra = parseModelFile(o.models_file);
  auto findSpec = [&](const std::string& name) -> const ModelSpec& {
    for (const ModelSpec& s : extra)
      if (s.name == name) return s;
    return catalogModel(name);
  };

  std::vector<ModelSpec> selected;
  if (o.use_catalog) {
    for (const ModelSpec& s : catalog())
      if (s.family == o.family) selected.push_back(s);
    for (const ModelSpec& s : extra)
      if (s.family == o.family) selected.push_back(s);
  } else {
    for (const std::string& name : o.models) selected.push_back(findSpec(name));
  }
  if (selected.empty()) fail(Errc::BadConfig, "no models selected (use --models or --catalog)");

  std::vector<FitResult> results;
  results.reserve(selected.size());
  for (const ModelSpec& spec : selected) results.push_back(fitModel(records, spec));

  ensureDir(o.out_dir);
  if (o.markdown) {
    std::ofstream md((fs::path(o.out_dir) / "report.md").string());
    md << reportMarkdown(results, o.alpha);
  }
  if (o.json) {
    std::ofstream js((fs::path(o.out_dir) / "report.json").string());
    js << reportJson(results);
  }
  return results;
}

void runReport(const ReportStage& o) {
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) fail(Errc::BadConfig, "alpha must lie in (0, 1)");
  std::ifstream in(o.fits_json);
  if (!in) fail(Errc::IoError, "cannot open " + o.fits_json);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto results = parseReportJson(ss.str());
  ensureDir(o.out_dir);
  if (o.markdown) {
    std::ofstream md((fs::path(o.out_dir) / "report.md").string());
    md << reportMarkdown(results, o.alpha);
  }
  if (o.json) {
    std::ofstream js((fs::path(o.out_dir) / "report.json").string());
    js << reportJson(results);
  }
}

}  // namespace iris_aging
