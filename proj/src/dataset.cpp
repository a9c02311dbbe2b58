#include "iris_aging/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <set>
#include <tuple>

#include "iris_aging/csv.hpp"

namespace iris_aging {

long parseDateDays(const std::string& iso, long line) {
  auto bad = [&]() -> long {
    fail(Errc::ParseError,
         "capture_date '" + iso + "' is not YYYY-MM-DD at line " + std::to_string(line));
  };
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') bad();
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
    if (!std::isdigit(static_cast<unsigned char>(iso[i]))) bad();

  const int y = std::stoi(iso.substr(0, 4));
  const unsigned m = unsigned(std::stoi(iso.substr(5, 2)));
  const unsigned d = unsigned(std::stoi(iso.substr(8, 2)));
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}};
  if (!ymd.ok()) bad();
  return std::chrono::sys_days(ymd).time_since_epoch().count();
}

namespace {

const char* kManifestHeader =
    "image_id,subject_id,eye,capture_date,image_path,mask_path,"
    "pupil_x,pupil_y,pupil_r,iris_x,iris_y,iris_r";

std::string pairName(const std::string& a, const std::string& b) { return a + " / " + b; }

}  // namespace

std::vector<ManifestEntry> loadManifest(const std::string& path) {
  const auto rows = readCsvFile(path);
  if (rows.empty()) fail(Errc::ParseError, path + ": empty manifest");
  if (csvJoin(rows[0].fields) != kManifestHeader)
    fail(Errc::ParseError, path + ": manifest header must be exactly '" +
                               std::string(kManifestHeader) + "'");

  std::vector<ManifestEntry> entries;
  std::set<std::string> seen;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != 12)
      fail(Errc::ParseError,
           path + ": expected 12 fields at line " + std::to_string(row.line));
    ManifestEntry e;
    e.image_id = row.fields[0];
    e.subject_id = row.fields[1];
    const std::string& eye = row.fields[2];
    e.capture_date = row.fields[3];
    e.image_path = row.fields[4];
    e.mask_path = row.fields[5];

    if (e.image_id.empty())
      fail(Errc::ParseError, path + ": empty image_id at line " + std::to_string(row.line));
    if (eye != "L" && eye != "R")
      fail(Errc::ParseError,
           path + ": eye must be L or R at line " + std::to_string(row.line));
    e.eye = eye[0];
    e.date_days = parseDateDays(e.capture_date, row.line);

    e.seg.pupil_x = parseDouble(row.fields[6], "pupil_x", row.line);
    e.seg.pupil_y = parseDouble(row.fields[7], "pupil_y", row.line);
    e.seg.pupil_r = parseDouble(row.fields[8], "pupil_r", row.line);
    e.seg.iris_x = parseDouble(row.fields[9], "iris_x", row.line);
    e.seg.iris_y = parseDouble(row.fields[10], "iris_y", row.line);
    e.seg.iris_r = parseDouble(row.fields[11], "iris_r", row.line);
    if (!e.seg.valid())
      fail(Errc::InvalidCircle,
           path + ": pupil/iris circles invalid for '" + e.image_id + "' at line " +
               std::to_string(row.line));

    if (!seen.insert(e.image_id).second)
      fail(Errc::DuplicateId,
           path + ": image_id '" + e.image_id + "' repeated at line " + std::to_string(row.line));
    entries.push_back(std::move(e));
  }
  return entries;
}

void writeManifest(const std::vector<ManifestEntry>& entries, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::IoError, "cannot write " + path);
  out << kManifestHeader << "\n";
  for (const auto& e : entries) {
    out << csvJoin({e.image_id, e.subject_id, std::string(1, e.eye), e.capture_date, e.image_path,
                    e.mask_path, formatDouble(e.seg.pupil_x), formatDouble(e.seg.pupil_y),
                    formatDouble(e.seg.pupil_r), formatDouble(e.seg.iris_x),
                    formatDouble(e.seg.iris_y), formatDouble(e.seg.iris_r)})
        << "\n";
  }
}

std::vector<GenuinePair> genuinePairs(const std::vector<ManifestEntry>& entries) {
  // canonical order: class key, then capture date, then image_id
  std::vector<const ManifestEntry*> sorted;
  sorted.reserve(entries.size());
  for (const auto& e : entries) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(), [](const ManifestEntry* a, const ManifestEntry* b) {
    const auto ka = std::tie(a->subject_id, a->eye, a->date_days, a->image_id);
    const auto kb = std::tie(b->subject_id, b->eye, b->date_days, b->image_id);
    return ka < kb;
  });

  std::vector<GenuinePair> pairs;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (sorted[i]->subject_id != sorted[j]->subject_id || sorted[i]->eye != sorted[j]->eye)
        break;  // classes are contiguous after sorting
      pairs.push_back({sorted[i]->image_id, sorted[j]->image_id,
                       sorted[j]->date_days - sorted[i]->date_days});
    }
  }
  return pairs;
}

std::vector<ScoreRow> readScoresCsv(const std::string& path) {
  const auto rows = readCsvFile(path);
  if (rows.empty()) fail(Errc::ParseError, path + ": empty score file");
  if (csvJoin(rows[0].fields) != "pair_id_1,pair_id_2,score")
    fail(Errc::ParseError, path + ": score header must be 'pair_id_1,pair_id_2,score'");
  std::vector<ScoreRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != 3)
      fail(Errc::ParseError, path + ": expected 3 fields at line " + std::to_string(row.line));
    out.push_back(
        {row.fields[0], row.fields[1], parseDouble(row.fields[2], "score", row.line)});
  }
  return out;
}

void writeScoresCsv(const std::vector<ScoreRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::IoError, "cannot write " + path);
  out << "pair_id_1,pair_id_2,score\n";
  for (const auto& r : rows)
    out << csvJoin({r.id1, r.id2, formatDouble(r.score)}) << "\n";
}

std::vector<CovariateRow> readCovariatesCsv(const std::string& path) {
  const auto rows = readCsvFile(path);
  if (rows.empty()) fail(Errc::ParseError, path + ": empty covariate file");
  if (csvJoin(rows[0].fields) != "image_id,family,OC,LC,IL,SH,PR,IR")
    fail(Errc::ParseError,
         path + ": covariate header must be 'image_id,family,OC,LC,IL,SH,PR,IR'");
  std::vector<CovariateRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != 8)
      fail(Errc::ParseError, path + ": expected 8 fields at line " + std::to_string(row.line));
    CovariateRow c;
    c.image_id = row.fields[0];
    c.family = familyFromString(row.fields[1]);
    if (!row.fields[2].empty()) c.oc = parseDouble(row.fields[2], "OC", row.line);
    c.lc = parseDouble(row.fields[3], "LC", row.line);
    c.il = parseDouble(row.fields[4], "IL", row.line);
    c.sh = parseDouble(row.fields[5], "SH", row.line);
    c.pr = parseDouble(row.fields[6], "PR", row.line);
    c.ir = parseDouble(row.fields[7], "IR", row.line);
    out.push_back(std::move(c));
  }
  return out;
}

void writeCovariatesCsv(const std::vector<CovariateRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::IoError, "cannot write " + path);
  out << "image_id,family,OC,LC,IL,SH,PR,IR\n";
  for (const auto& r : rows) {
    out << csvJoin({r.image_id, std::string(1, familyChar(r.family)),
                    r.oc ? formatDouble(*r.oc) : std::string{}, formatDouble(r.lc),
                    formatDouble(r.il), formatDouble(r.sh), formatDouble(r.pr),
                    formatDouble(r.ir)})
        << "\n";
  }
}

std::vector<ComparisonRecord> buildRecords(const std::vector<GenuinePair>& pairs,
                                           const std::vector<ScoreRow>& scores,
                                           const std::vector<CovariateRow>& covariates,
                                           Family family) {
  std::map<std::pair<std::string, std::string>, double> scoreMap;
  for (const auto& s : scores) scoreMap[{s.id1, s.id2}] = s.score;
  std::map<std::string, const CovariateRow*> covMap;
  for (const auto& c : covariates) covMap[c.image_id] = &c;

  auto lookupScore = [&](const GenuinePair& p) {
    auto it = scoreMap.find({p.id1, p.id2});
    if (it == scoreMap.end()) it = scoreMap.find({p.id2, p.id1});
    if (it == scoreMap.end())
      fail(Errc::MissingScore, "no score for pair " + pairName(p.id1, p.id2));
    return it->second;
  };
  auto lookupCov = [&](const std::string& id) {
    auto it = covMap.find(id);
    if (it == covMap.end()) fail(Errc::MissingCovariate, "no covariates for image " + id);
    return it->second;
  };
  auto toQuality = [&](const CovariateRow& c, const std::string& id) {
    QualityVector q;
    if (family == Family::D) {
      if (!c.oc)
        fail(Errc::MissingCovariate, "family D needs OC but image " + id + " has none");
      q.oc = c.oc;
    }
    q.lc = c.lc;
    q.il = c.il;
    q.sh = c.sh;
    return q;
  };

  std::vector<ComparisonRecord> records;
  records.reserve(pairs.size());
  for (const auto& p : pairs) {
    ComparisonRecord r;
    r.id1 = p.id1;
    r.id2 = p.id2;
    r.dt_days = p.dt_days;
    r.score = lookupScore(p);
    const CovariateRow* c1 = lookupCov(p.id1);
    const CovariateRow* c2 = lookupCov(p.id2);
    r.q1 = toQuality(*c1, p.id1);
    r.q2 = toQuality(*c2, p.id2);
    if (family != Family::V) {
      r.g1 = GeometryVector{c1->pr, c1->ir};
      r.g2 = GeometryVector{c2->pr, c2->ir};
    }
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

const char* kRecordsHeader =
    "id1,id2,dt_days,score,OC1,OC2,LC1,LC2,IL1,IL2,SH1,SH2,PR1,PR2,IR1,IR2";

std::string opt(const std::optional<double>& v) { return v ? formatDouble(*v) : std::string{}; }

}  // namespace

std::vector<ComparisonRecord> readRecordsCsv(const std::string& path) {
  const auto rows = readCsvFile(path);
  if (rows.empty()) fail(Errc::ParseError, path + ": empty records file");
  if (csvJoin(rows[0].fields) != kRecordsHeader)
    fail(Errc::ParseError, path + ": records header must be '" + std::string(kRecordsHeader) + "'");
  std::vector<ComparisonRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != 16)
      fail(Errc::ParseError, path + ": expected 16 fields at line " + std::to_string(row.line));
    const auto& f = row.fields;
    ComparisonRecord r;
    r.id1 = f[0];
    r.id2 = f[1];
    r.dt_days = parseLong(f[2], "dt_days", row.line);
    r.score = parseDouble(f[3], "score", row.line);
    if (!f[4].empty()) r.q1.oc = parseDouble(f[4], "OC1", row.line);
    if (!f[5].empty()) r.q2.oc = parseDouble(f[5], "OC2", row.line);
    r.q1.lc = parseDouble(f[6], "LC1", row.line);
    r.q2.lc = parseDouble(f[7], "LC2", row.line);
    r.q1.il = parseDouble(f[8], "IL1", row.line);
    r.q2.il = parseDouble(f[9], "IL2", row.line);
    r.q1.sh = parseDouble(f[10], "SH1", row.line);
    r.q2.sh = parseDouble(f[11], "SH2", row.line);
    const bool hasGeom1 = !f[12].empty() || !f[14].empty();
    const bool hasGeom2 = !f[13].empty() || !f[15].empty();
    if (hasGeom1)
      r.g1 = GeometryVector{parseDouble(f[12], "PR1", row.line),
                            parseDouble(f[14], "IR1", row.line)};
    if (hasGeom2)
      r.g2 = GeometryVector{parseDouble(f[13], "PR2", row.line),
                            parseDouble(f[15], "IR2", row.line)};
    out.push_back(std::move(r));
  }
  return out;
}

void writeRecordsCsv(const std::vector<ComparisonRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::IoError, "cannot write " + path);
  out << kRecordsHeader << "\n";
  for (const auto& r : records) {
    out << csvJoin({r.id1, r.id2, std::to_string(r.dt_days), formatDouble(r.score), opt(r.q1.oc),
                    opt(r.q2.oc), formatDouble(r.q1.lc), formatDouble(r.q2.lc),
                    formatDouble(r.q1.il), formatDouble(r.q2.il), formatDouble(r.q1.sh),
                    formatDouble(r.q2.sh), r.g1 ? formatDouble(r.g1->pr) : std::string{},
                    r.g2 ? formatDouble(r.g2->pr) : std::string{},
                    r.g1 ? formatDouble(r.g1->ir) : std::string{},
                    r.g2 ? formatDouble(r.g2->ir) : std::string{}})
        << "\n";
  }
}

}  // namespace iris_aging
