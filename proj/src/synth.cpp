#include "iris_aging/synth.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "iris_aging/rng.hpp"

namespace iris_aging {

namespace {

// stream tags
constexpr std::uint64_t kTagTexture = 1;
constexpr std::uint64_t kTagCapture = 2;
constexpr std::uint64_t kTagScore = 3;
constexpr std::uint64_t kTagAnatomy = 4;

std::string isoFromDays(long days) {
  const std::chrono::year_month_day ymd{
      std::chrono::sys_days{std::chrono::days{days}}};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                unsigned(ymd.day()));
  return buf;
}

constexpr int kCanvasRows = 64;
constexpr int kCanvasCols = 512;

/// Band-limited noise on the normalized iris domain: rows are radial
/// (clamped), columns angular (wrapped). This is the class's iris pattern;
/// captures of the class render it through their own circles.
FloatImage polarCanvas(Rng& rng, int rowRadius, int colRadius) {
  FloatImage f(kCanvasRows, kCanvasCols);
  for (int i = 0; i < kCanvasRows; ++i)
    for (int j = 0; j < kCanvasCols; ++j) f(i, j) = rng.uniform(0.0, 255.0);

  FloatImage tmp(kCanvasRows, kCanvasCols);
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < kCanvasRows; ++i)
      for (int j = 0; j < kCanvasCols; ++j) {
        double acc = 0;
        for (int d = -colRadius; d <= colRadius; ++d)
          acc += f(i, (j + d + kCanvasCols) % kCanvasCols);
        tmp(i, j) = acc / (2 * colRadius + 1);
      }
    for (int j = 0; j < kCanvasCols; ++j)
      for (int i = 0; i < kCanvasRows; ++i) {
        double acc = 0;
        for (int d = -rowRadius; d <= rowRadius; ++d)
          acc += tmp(std::clamp(i + d, 0, kCanvasRows - 1), j);
        f(i, j) = acc / (2 * rowRadius + 1);
      }
  }
  const double lo = f.minCoeff(), hi = f.maxCoeff();
  const double scale = hi > lo ? 1.0 / (hi - lo) : 0.0;
  return (f - lo) * scale;  // [0, 1]
}

/// Bilinear canvas lookup at normalized radius t in [0,1] and angle in
/// degrees-equivalent radians, wrapping the angular axis.
double sampleCanvas(const FloatImage& canvas, double t, double theta) {
  const double row = std::clamp(t * kCanvasRows - 0.5, 0.0, double(kCanvasRows - 1));
  double col = theta / (2.0 * M_PI) * kCanvasCols - 0.5;
  col -= kCanvasCols * std::floor(col / kCanvasCols);
  if (col >= kCanvasCols) col -= kCanvasCols;  // rounding can land exactly on the seam
  const int r0 = int(row);
  const int r1 = std::min(r0 + 1, kCanvasRows - 1);
  const int c0 = int(col);
  const int c1 = (c0 + 1) % kCanvasCols;
  const double fr = row - r0, fc = col - c0;
  return (1 - fr) * ((1 - fc) * canvas(r0, c0) + fc * canvas(r0, c1)) +
         fr * ((1 - fc) * canvas(r1, c0) + fc * canvas(r1, c1));
}

}  // namespace

SynthConfig synthConfigFromJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("bad synth config JSON: ") + e.what());
  }
  SynthConfig cfg;
  cfg.seed = j.value("seed", cfg.seed);
  cfg.n_classes = j.value("n_classes", cfg.n_classes);
  cfg.images_per_class = j.value("images_per_class", cfg.images_per_class);
  cfg.date_start = j.value("date_start", cfg.date_start);
  cfg.date_end = j.value("date_end", cfg.date_end);
  cfg.image_size = j.value("image_size", cfg.image_size);
  cfg.texture_noise = j.value("texture_noise", cfg.texture_noise);
  cfg.aging_drift = j.value("aging_drift", cfg.aging_drift);
  cfg.occlusion = j.value("occlusion", cfg.occlusion);
  cfg.base_score = j.value("base_score", cfg.base_score);
  cfg.time_slope = j.value("time_slope", cfg.time_slope);
  cfg.noise_sigma = j.value("noise_sigma", cfg.noise_sigma);
  if (j.contains("covariate_effects")) {
    for (auto it = j["covariate_effects"].begin(); it != j["covariate_effects"].end(); ++it) {
      const Term term = termFromToken(it.key());
      if (term.kind == Term::Kind::Intercept || term.kind == Term::Kind::Time)
        fail(Errc::BadConfig,
             "effect '" + it.key() + "' duplicates base_score/time_slope; use those fields");
      if (term.kind == Term::Kind::AbsProd && term.cov != Covariate::OC)
        fail(Errc::BadConfig, "AbsProd effects exist for OC only");
      if (term.kind == Term::Kind::AbsDiff && term.cov == Covariate::OC)
        fail(Errc::BadConfig, "OC pairs combine by AbsProd, not AbsDiff");
      cfg.covariate_effects.emplace_back(term, it.value().get<double>());
    }
  }
  if (cfg.n_classes < 1 || cfg.images_per_class < 1)
    fail(Errc::BadConfig, "synth counts must be >= 1");
  if (cfg.noise_sigma < 0) fail(Errc::BadConfig, "noise_sigma must be >= 0");
  if (cfg.image_size < 128)
    fail(Errc::BadConfig, "image_size must be >= 128 so valid circles fit");
  if (cfg.occlusion < 0 || cfg.occlusion > 0.9)
    fail(Errc::BadConfig, "occlusion must lie in [0, 0.9]");
  return cfg;
}

SynthConfig loadSynthConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return synthConfigFromJson(ss.str());
}

SynthDataset generateManifest(const SynthConfig& cfg) {
  const long day0 = parseDateDays(cfg.date_start);
  const long day1 = parseDateDays(cfg.date_end);
  if (day1 < day0) fail(Errc::BadConfig, "date_end before date_start");

  const Rng root(cfg.seed);
  SynthDataset out;
  out.entries.reserve(std::size_t(cfg.n_classes) * cfg.images_per_class);

  for (int k = 0; k < cfg.n_classes; ++k) {
    const Rng classRng = root.stream(std::uint64_t(k) + 1);
    Rng texRng = classRng.stream(kTagTexture);
    const FloatImage pattern = polarCanvas(texRng, 2, 3);  // the class's iris

    // drift pattern in [-1, 1], aged into the iris with elapsed time
    Rng driftRng = texRng.stream(kTagTexture);
    const FloatImage driftPat = polarCanvas(driftRng, 2, 3) * 2.0 - 1.0;

    // Class anatomy is stable; captures vary around it (pupil dilation,
    // segmentation jitter). Jitter factors are chosen so every capture keeps
    // PR in [18,40] and IR/PR in [2.2,3.2].
    Rng geoRng = classRng.stream(kTagAnatomy);
    const double ratioBase = geoRng.uniform(2.45, 2.9);
    const double prCap = (cfg.image_size / 2.0 - 5.0) / (ratioBase * 1.02) - 0.5;
    const double prBase = geoRng.uniform(18.0 / 0.93, std::max(18.0 / 0.93, std::min(34.0, prCap)));
    const double irWorst = prBase * ratioBase * 1.02;
    const double margin = irWorst + 5.0;
    const double classCx = margin + geoRng.uniform(0.0, cfg.image_size - 2.0 * margin);
    const double classCy = margin + geoRng.uniform(0.0, cfg.image_size - 2.0 * margin);

    char subject[16], eyech = (k % 2 == 0) ? 'L' : 'R';
    std::snprintf(subject, sizeof subject, "S%03d", k / 2);

    for (int i = 0; i < cfg.images_per_class; ++i) {
      Rng capRng = classRng.stream(kTagCapture).stream(std::uint64_t(i) + 1);
      ManifestEntry e;
      char id[32];
      std::snprintf(id, sizeof id, "%s_%c_%02d", subject, eyech, i);
      e.image_id = id;
      e.subject_id = subject;
      e.eye = eyech;
      e.date_days = day0 + capRng.uniformInt(0, day1 - day0);
      e.capture_date = isoFromDays(e.date_days);
      e.image_path = "images/" + e.image_id + ".pgm";
      if (cfg.occlusion > 0) e.mask_path = "masks/" + e.image_id + ".pgm";

      // concentric circles: the renders below invert the rubber sheet
      // exactly, which models the manually corrected segmentation the
      // pipeline assumes
      const double pr = prBase * capRng.uniform(0.95, 1.05);          // pupil dilation
      const double ir = prBase * ratioBase * capRng.uniform(0.99, 1.01);  // stable outer boundary
      const double cx = classCx + capRng.uniform(-1.5, 1.5);
      const double cy = classCy + capRng.uniform(-1.5, 1.5);
      e.seg = {cx, cy, pr, cx, cy, ir};
      if (!e.seg.valid()) fail(Errc::InvalidCircle, "synth produced invalid circles (bug)");

      // render: inverse rubber-sheet of the class pattern through this
      // capture's (concentric) circles, dark pupil, bright sclera
      GrayImage img(cfg.image_size, cfg.image_size);
      const double illumDrift = capRng.uniform(-10.0, 10.0);
      const double age = cfg.aging_drift * double(e.date_days - day0);
      for (Eigen::Index row = 0; row < img.rows(); ++row)
        for (Eigen::Index col = 0; col < img.cols(); ++col) {
          const double dx = double(col) - cx;
          const double dy = double(row) - cy;
          const double r = std::hypot(dx, dy);
          double v;
          if (r < pr) {
            v = 25.0;
          } else if (r > ir) {
            v = 205.0;
          } else {
            const double t = (r - pr) / (ir - pr);
            const double theta = std::atan2(-dy, dx);  // unwrap's angle convention
            v = 40.0 + 175.0 * sampleCanvas(pattern, t, theta) +
                age * sampleCanvas(driftPat, t, theta);
          }
          v += illumDrift + cfg.texture_noise * capRng.gaussian();
          img(row, col) = std::uint8_t(std::lround(std::clamp(v, 0.0, 255.0)));
        }

      if (cfg.occlusion > 0) {
        // eyelid band: invalid above a horizontal line dipping into the iris
        const double depth = capRng.uniform(0.0, cfg.occlusion) * ir;
        const double lidY = cy - ir + depth;
        BitMask mask(cfg.image_size, cfg.image_size);
        for (Eigen::Index r = 0; r < mask.rows(); ++r)
          for (Eigen::Index c = 0; c < mask.cols(); ++c) mask(r, c) = double(r) >= lidY;
        out.masks.push_back(std::move(mask));
      }

      out.entries.push_back(std::move(e));
      out.images.push_back(std::move(img));
    }
  }
  return out;
}

std::vector<ScoreRow> generateScores(const std::vector<GenuinePair>& pairs,
                                     const std::vector<ManifestEntry>& entries,
                                     const SynthConfig& cfg,
                                     const std::vector<CovariateRow>* covariates) {
  std::map<std::string, const ManifestEntry*> byId;
  for (const auto& e : entries) byId[e.image_id] = &e;
  std::map<std::string, const CovariateRow*> covById;
  if (covariates)
    for (const auto& c : *covariates) covById[c.image_id] = &c;

  auto pseudoRecord = [&](const GenuinePair& p) {
    ComparisonRecord rec;
    rec.id1 = p.id1;
    rec.id2 = p.id2;
    rec.dt_days = p.dt_days;
    for (int which = 1; which <= 2; ++which) {
      const std::string& id = which == 1 ? p.id1 : p.id2;
      auto it = byId.find(id);
      if (it == byId.end()) fail(Errc::MissingCovariate, "pair references unknown image " + id);
      QualityVector& q = which == 1 ? rec.q1 : rec.q2;
      auto& g = which == 1 ? rec.g1 : rec.g2;
      g = GeometryVector{it->second->seg.pupil_r, it->second->seg.iris_r};
      auto cit = covById.find(id);
      if (cit != covById.end()) {
        q.oc = cit->second->oc;
        q.lc = cit->second->lc;
        q.il = cit->second->il;
        q.sh = cit->second->sh;
      } else if (!cfg.covariate_effects.empty()) {
        // only a problem if an effect actually reads a quality covariate;
        // termValue raises MissingCovariate through the OC optional, and the
        // quality scalars are flagged here
        for (const auto& [term, coeff] : cfg.covariate_effects) {
          (void)coeff;
          const bool quality = term.kind != Term::Kind::Time &&
                               (term.cov == Covariate::LC || term.cov == Covariate::IL ||
                                term.cov == Covariate::SH || term.cov == Covariate::OC);
          if (quality)
            fail(Errc::MissingCovariate,
                 "effect on " + term.token() + " needs a covariates table");
        }
      }
    }
    return rec;
  };

  const Rng root = Rng(cfg.seed).stream(kTagScore);
  std::vector<ScoreRow> rows;
  rows.reserve(pairs.size());
  for (const auto& p : pairs) {
    const ComparisonRecord rec = pseudoRecord(p);
    double score = cfg.base_score + cfg.time_slope * double(p.dt_days);
    for (const auto& [term, coeff] : cfg.covariate_effects) score += coeff * termValue(term, rec);
    if (cfg.noise_sigma > 0) {
      Rng pairRng = root.stream(p.id1 + "|" + p.id2);
      score += cfg.noise_sigma * pairRng.gaussian();
    }
    rows.push_back({p.id1, p.id2, score});
  }
  return rows;
}

}  // namespace iris_aging
