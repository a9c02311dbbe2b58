#ifndef IRIS_AGING_ERRORS_HPP
#define IRIS_AGING_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace iris_aging {

enum class Errc {
  InvalidGeometry,
  DegenerateGrid,
  DegenerateMask,
  MissingPolar,
  PolarTooSmall,
  ConfigMismatch,
  NoOverlap,
  ParseError,
  DuplicateId,
  InvalidCircle,
  MissingScore,
  MissingCovariate,
  RankDeficient,
  Underdetermined,
  EmptyInput,
  InvalidDf,
  UnknownModel,
  BadConfig,
  IoError,
};

const char* errcName(Errc c);

/// Single exception type for all domain errors; `code()` identifies the
/// failure class so callers (and tests) can dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errcName(code)) + ": " + msg), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace iris_aging

#endif
