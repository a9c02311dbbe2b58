#include "iris_aging/filters.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace iris_aging {

FloatImage logKernel(double sigma) {
  if (!(sigma > 0.0)) fail(Errc::BadConfig, "log_filter sigma must be > 0");
  int side = static_cast<int>(std::ceil(6.0 * sigma));
  if (side % 2 == 0) ++side;
  const int half = side / 2;
  const double s2 = sigma * sigma;
  const double norm = 2.0 * M_PI * s2 * s2 * s2;

  FloatImage k(side, side);
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      const double dy = i - half;
      const double dx = j - half;
      const double r2 = dx * dx + dy * dy;
      k(i, j) = (r2 - 2.0 * s2) / norm * std::exp(-r2 / (2.0 * s2));
    }
  }
  k -= k.mean();

  // Quantize entries to multiples of 2^-40 and balance the residue on the
  // center tap. Entry sums and products with 8-bit intensities then stay
  // exact in doubles, so the zero sum cancels in any accumulation order.
  const double q = 0x1p40;
  long long total = 0;
  Eigen::Array<long long, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m(side, side);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      m(i, j) = std::llround(k(i, j) * q);
      total += m(i, j);
    }
  m(half, half) -= total;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) k(i, j) = double(m(i, j)) / q;
  return k;
}

FloatImage convolveReplicate(const FloatImage& img, const FloatImage& kernel) {
  const Eigen::Index h = img.rows(), w = img.cols();
  const Eigen::Index kh = kernel.rows(), kw = kernel.cols();
  const Eigen::Index cy = kh / 2, cx = kw / 2;
  FloatImage out(h, w);

  auto clampi = [](Eigen::Index v, Eigen::Index hi) {
    return v < 0 ? Eigen::Index{0} : (v > hi ? hi : v);
  };

  for (Eigen::Index i = 0; i < h; ++i) {
    for (Eigen::Index j = 0; j < w; ++j) {
      double acc = 0.0;
      for (Eigen::Index u = 0; u < kh; ++u) {
        const Eigen::Index si = clampi(i - (u - cy), h - 1);
        for (Eigen::Index v = 0; v < kw; ++v) {
          const Eigen::Index sj = clampi(j - (v - cx), w - 1);
          acc += kernel(u, v) * img(si, sj);
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

namespace {

// Huang-style sliding histogram; window is asymmetric (-4..+5) around the
// anchor pixel per the filter contract.
constexpr int kLo = -4;
constexpr int kHi = 5;

inline std::uint8_t histMedian(const std::array<int, 256>& hist, int count) {
  const int need = (count + 1) / 2;  // rank of element (count-1)/2, 1-based
  int cum = 0;
  for (int v = 0; v < 256; ++v) {
    cum += hist[v];
    if (cum >= need) return static_cast<std::uint8_t>(v);
  }
  return 255;
}

}  // namespace

GrayImage medianFilter10x10(const GrayImage& img) {
  const Eigen::Index h = img.rows(), w = img.cols();
  if (h == 0 || w == 0) fail(Errc::BadConfig, "median filter input is empty");
  GrayImage out(h, w);

  for (Eigen::Index i = 0; i < h; ++i) {
    const Eigen::Index r0 = std::max<Eigen::Index>(0, i + kLo);
    const Eigen::Index r1 = std::min<Eigen::Index>(h - 1, i + kHi);

    std::array<int, 256> hist{};
    int count = 0;
    const Eigen::Index c1_init = std::min<Eigen::Index>(w - 1, kHi);
    for (Eigen::Index r = r0; r <= r1; ++r)
      for (Eigen::Index c = 0; c <= c1_init; ++c) {
        ++hist[img(r, c)];
        ++count;
      }
    out(i, 0) = histMedian(hist, count);

    for (Eigen::Index j = 1; j < w; ++j) {
      const Eigen::Index leaving = j + kLo - 1;
      if (leaving >= 0) {
        for (Eigen::Index r = r0; r <= r1; ++r) {
          --hist[img(r, leaving)];
          --count;
        }
      }
      const Eigen::Index entering = j + kHi;
      if (entering <= w - 1) {
        for (Eigen::Index r = r0; r <= r1; ++r) {
          ++hist[img(r, entering)];
          ++count;
        }
      }
      out(i, j) = histMedian(hist, count);
    }
  }
  return out;
}

}  // namespace iris_aging
