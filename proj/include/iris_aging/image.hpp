#ifndef IRIS_AGING_IMAGE_HPP
#define IRIS_AGING_IMAGE_HPP

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <vector>

#include "iris_aging/errors.hpp"

namespace iris_aging {

/// Dense raster, row-major so that (row, col) indexing matches the on-disk
/// pixel order of PGM/PNG payloads.
template <typename Scalar>
using ImageT = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using GrayImage = ImageT<std::uint8_t>;   // intensities in [0,255]
using FloatImage = ImageT<double>;        // signed filter responses
using BitMask = ImageT<bool>;             // true = valid iris pixel

inline BitMask fullMask(Eigen::Index rows, Eigen::Index cols) {
  return BitMask::Constant(rows, cols, true);
}

/// Pupil/iris circles in image pixel coordinates (x right, y down).
struct SegmentationCircles {
  double pupil_x = 0, pupil_y = 0, pupil_r = 0;
  double iris_x = 0, iris_y = 0, iris_r = 0;

  /// pupil_r > 0, iris_r > pupil_r, pupil circle contained in iris circle.
  bool valid() const {
    if (!(pupil_r > 0.0) || !(iris_r > pupil_r)) return false;
    const double dx = pupil_x - iris_x;
    const double dy = pupil_y - iris_y;
    return std::sqrt(dx * dx + dy * dy) + pupil_r <= iris_r + 1e-9;
  }
};

/// Half-open-by-convention angular interval in degrees, start < end,
/// measured counterclockwise from 3 o'clock (image y points down).
struct AngleInterval {
  double start_deg = 0;
  double end_deg = 360;
  double span() const { return end_deg - start_deg; }
};

/// Rubber-sheet normalized iris: rows run radially (pupil boundary at the
/// top, iris boundary at the bottom), columns run along the angle.
struct PolarIris {
  GrayImage texture;
  BitMask mask;
  std::vector<AngleInterval> sectors;

  Eigen::Index rows() const { return texture.rows(); }
  Eigen::Index cols() const { return texture.cols(); }
};

}  // namespace iris_aging

#endif
