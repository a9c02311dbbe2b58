#ifndef IRIS_AGING_DATASET_HPP
#define IRIS_AGING_DATASET_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iris_aging/image.hpp"
#include "iris_aging/quality.hpp"

namespace iris_aging {

/// One captured sample. (subject_id, eye) defines a class.
struct ManifestEntry {
  std::string image_id;
  std::string subject_id;
  char eye = 'L';
  std::string capture_date;  // ISO 8601 YYYY-MM-DD
  long date_days = 0;        // days since the civil epoch, for ordering
  std::string image_path;
  std::string mask_path;  // empty = no occlusion mask supplied
  SegmentationCircles seg;
};

/// ISO date -> day count (errors carry `line` for manifest diagnostics).
long parseDateDays(const std::string& iso, long line = 0);

/// Header must be exactly:
/// image_id,subject_id,eye,capture_date,image_path,mask_path,
/// pupil_x,pupil_y,pupil_r,iris_x,iris_y,iris_r
std::vector<ManifestEntry> loadManifest(const std::string& path);
void writeManifest(const std::vector<ManifestEntry>& entries, const std::string& path);

/// Genuine pair oriented earlier-first (date ties break on image_id).
struct GenuinePair {
  std::string id1;  // earlier capture
  std::string id2;  // later capture
  long dt_days = 0;
};

/// All within-class pairs in a canonical order that does not depend on the
/// manifest row order.
std::vector<GenuinePair> genuinePairs(const std::vector<ManifestEntry>& entries);

/// One genuine comparison with the covariates of both images attached.
/// Geometry is absent for family V records.
struct ComparisonRecord {
  std::string id1, id2;
  long dt_days = 0;
  double score = 0;
  QualityVector q1, q2;
  std::optional<GeometryVector> g1, g2;
};

struct ScoreRow {
  std::string id1, id2;
  double score = 0;
};

/// Per-image covariate row as written by the quality stage. PR/IR always
/// present; OC empty for families computed without a polar mask.
struct CovariateRow {
  std::string image_id;
  Family family = Family::D;
  std::optional<double> oc;
  double lc = 0, il = 0, sh = 0;
  double pr = 0, ir = 0;
};

std::vector<ScoreRow> readScoresCsv(const std::string& path);
void writeScoresCsv(const std::vector<ScoreRow>& rows, const std::string& path);

std::vector<CovariateRow> readCovariatesCsv(const std::string& path);
void writeCovariatesCsv(const std::vector<CovariateRow>& rows, const std::string& path);

/// Joins pairs with scores and covariates; every pair must resolve a score
/// (MissingScore) and both images their covariates (MissingCovariate).
std::vector<ComparisonRecord> buildRecords(const std::vector<GenuinePair>& pairs,
                                           const std::vector<ScoreRow>& scores,
                                           const std::vector<CovariateRow>& covariates,
                                           Family family);

std::vector<ComparisonRecord> readRecordsCsv(const std::string& path);
void writeRecordsCsv(const std::vector<ComparisonRecord>& records, const std::string& path);

}  // namespace iris_aging

#endif
