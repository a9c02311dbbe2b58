#ifndef IRIS_AGING_CSV_HPP
#define IRIS_AGING_CSV_HPP

#include <string>
#include <vector>

namespace iris_aging {

struct CsvRow {
  std::vector<std::string> fields;
  long line = 0;  // 1-based line number in the source file
};

/// Minimal RFC-4180ish parsing: comma separated, optional double-quote
/// quoting with "" escapes. CRLF tolerated. Empty lines are skipped.
std::vector<CsvRow> readCsvFile(const std::string& path);

std::vector<std::string> splitCsvLine(const std::string& line);

/// Joins fields, quoting any that contain a comma, quote or newline.
std::string csvJoin(const std::vector<std::string>& fields);

/// Shortest decimal that round-trips the double (used everywhere a CSV cell
/// holds a number, so artifacts are byte-stable across reruns).
std::string formatDouble(double v);

double parseDouble(const std::string& s, const std::string& what, long line);
long parseLong(const std::string& s, const std::string& what, long line);

}  // namespace iris_aging

#endif
