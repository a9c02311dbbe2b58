#ifndef IRIS_AGING_POLAR_HPP
#define IRIS_AGING_POLAR_HPP

#include "iris_aging/image.hpp"

namespace iris_aging {

/// Sampling grid for rubber-sheet normalization. `cols` is the full-circle
/// column density: a sector covering s degrees receives round(cols * s/360)
/// columns. An empty sector list means the full circle [0, 360).
struct PolarGrid {
  int rows = 64;
  int cols = 512;
  std::vector<AngleInterval> sectors;
};

/// Rubber-sheet unwrap. Pixel (r, c) is the bilinear sample of `img` at the
/// point interpolated between the pupil and iris boundary crossings of the
/// ray at the angle of column c, with t = (r+0.5)/rows. Angles start at
/// 3 o'clock and advance counterclockwise (y is down in image coordinates).
/// The polar mask is false where the sample point falls outside the image or
/// where any of the four bilinear support pixels is false in `mask`.
PolarIris unwrapToPolar(const GrayImage& img, const SegmentationCircles& seg,
                        const BitMask* mask, const PolarGrid& grid = {});

}  // namespace iris_aging

#endif
