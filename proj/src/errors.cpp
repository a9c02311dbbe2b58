#include "iris_aging/errors.hpp"

namespace iris_aging {

const char* errcName(Errc c) {
  switch (c) {
    case Errc::InvalidGeometry: return "InvalidGeometry";
    case Errc::DegenerateGrid: return "DegenerateGrid";
    case Errc::DegenerateMask: return "DegenerateMask";
    case Errc::MissingPolar: return "MissingPolar";
    case Errc::PolarTooSmall: return "PolarTooSmall";
    case Errc::ConfigMismatch: return "ConfigMismatch";
    case Errc::NoOverlap: return "NoOverlap";
    case Errc::ParseError: return "ParseError";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::InvalidCircle: return "InvalidCircle";
    case Errc::MissingScore: return "MissingScore";
    case Errc::MissingCovariate: return "MissingCovariate";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::Underdetermined: return "Underdetermined";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::InvalidDf: return "InvalidDf";
    case Errc::UnknownModel: return "UnknownModel";
    case Errc::BadConfig: return "BadConfig";
    case Errc::IoError: return "IoError";
  }
  return "Error";
}

}  // namespace iris_aging
