#include "iris_aging/polar.hpp"

#include <algorithm>
#include <cmath>

namespace iris_aging {

namespace {

struct Sample {
  double value;
  bool valid;
};

Sample sampleBilinear(const GrayImage& img, const BitMask* mask, double x, double y) {
  const Eigen::Index w = img.cols(), h = img.rows();
  const bool inside = x >= 0.0 && x <= double(w - 1) && y >= 0.0 && y <= double(h - 1);

  const double xc = std::clamp(x, 0.0, double(w - 1));
  const double yc = std::clamp(y, 0.0, double(h - 1));
  const Eigen::Index x0 = static_cast<Eigen::Index>(std::floor(xc));
  const Eigen::Index y0 = static_cast<Eigen::Index>(std::floor(yc));
  const Eigen::Index x1 = std::min(x0 + 1, w - 1);
  const Eigen::Index y1 = std::min(y0 + 1, h - 1);
  const double fx = xc - double(x0);
  const double fy = yc - double(y0);

  const double v = (1.0 - fy) * ((1.0 - fx) * img(y0, x0) + fx * img(y0, x1)) +
                   fy * ((1.0 - fx) * img(y1, x0) + fx * img(y1, x1));

  bool valid = inside;
  if (valid && mask) {
    valid = (*mask)(y0, x0) && (*mask)(y0, x1) && (*mask)(y1, x0) && (*mask)(y1, x1);
  }
  return {v, valid};
}

}  // namespace

PolarIris unwrapToPolar(const GrayImage& img, const SegmentationCircles& seg,
                        const BitMask* mask, const PolarGrid& grid) {
  if (grid.rows < 4 || grid.cols < 16)
    fail(Errc::DegenerateGrid, "polar grid needs rows >= 4 and cols >= 16");
  if (!(seg.pupil_r > 0.0) || seg.pupil_r >= seg.iris_r)
    fail(Errc::InvalidGeometry, "requires 0 < pupil radius < iris radius");
  if (mask && (mask->rows() != img.rows() || mask->cols() != img.cols()))
    fail(Errc::BadConfig, "mask dimensions differ from image");

  std::vector<AngleInterval> sectors = grid.sectors;
  if (sectors.empty()) sectors.push_back({0.0, 360.0});

  std::vector<int> sectorCols;
  Eigen::Index totalCols = 0;
  for (const auto& s : sectors) {
    if (!(s.span() > 0.0) || s.span() > 360.0 + 1e-9)
      fail(Errc::BadConfig, "sector span must lie in (0, 360] degrees");
    const int n = static_cast<int>(std::lround(grid.cols * s.span() / 360.0));
    sectorCols.push_back(n);
    totalCols += n;
  }
  if (totalCols <= 0) fail(Errc::DegenerateGrid, "sectors map to zero columns");

  PolarIris polar;
  polar.texture.resize(grid.rows, totalCols);
  polar.mask.resize(grid.rows, totalCols);
  polar.sectors = sectors;

  Eigen::Index col = 0;
  for (std::size_t si = 0; si < sectors.size(); ++si) {
    const AngleInterval& sec = sectors[si];
    const int n = sectorCols[si];
    for (int c = 0; c < n; ++c, ++col) {
      const double deg = sec.start_deg + (c + 0.5) * sec.span() / n;
      const double phi = deg * M_PI / 180.0;
      const double dirx = std::cos(phi);
      const double diry = -std::sin(phi);  // counterclockwise on a y-down raster
      const double px = seg.pupil_x + seg.pupil_r * dirx;
      const double py = seg.pupil_y + seg.pupil_r * diry;
      const double ix = seg.iris_x + seg.iris_r * dirx;
      const double iy = seg.iris_y + seg.iris_r * diry;

      for (int r = 0; r < grid.rows; ++r) {
        const double t = (r + 0.5) / grid.rows;
        const double x = (1.0 - t) * px + t * ix;
        const double y = (1.0 - t) * py + t * iy;
        const Sample s = sampleBilinear(img, mask, x, y);
        polar.texture(r, col) =
            static_cast<std::uint8_t>(std::lround(std::clamp(s.value, 0.0, 255.0)));
        polar.mask(r, col) = s.valid;
      }
    }
  }
  return polar;
}

}  // namespace iris_aging
