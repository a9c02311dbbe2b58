// Independent brute-force reference implementations used by the test and
// acceptance suites. These deliberately avoid the library's code paths:
// medians sort, convolutions run naive loops, least squares goes through
// long-double normal equations, and t tails come from numerical quadrature.
#ifndef IRIS_AGING_TESTS_ORACLES_HPP
#define IRIS_AGING_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "iris_aging/image.hpp"

namespace oracle {

using iris_aging::BitMask;
using iris_aging::FloatImage;
using iris_aging::GrayImage;

// ---- imaging ----

inline std::uint8_t medianAt(const GrayImage& img, long i, long j) {
  std::vector<std::uint8_t> window;
  for (long r = i - 4; r <= i + 5; ++r)
    for (long c = j - 4; c <= j + 5; ++c)
      if (r >= 0 && r < img.rows() && c >= 0 && c < img.cols())
        window.push_back(img(r, c));
  std::sort(window.begin(), window.end());
  return window[(window.size() - 1) / 2];
}

inline GrayImage medianFilter(const GrayImage& img) {
  GrayImage out(img.rows(), img.cols());
  for (long i = 0; i < img.rows(); ++i)
    for (long j = 0; j < img.cols(); ++j) out(i, j) = medianAt(img, i, j);
  return out;
}

// Same contract as the library kernel (side ceil(6s)|odd, mean-subtracted,
// entries quantized to 2^-40 with the residue balanced on the center),
// written independently.
inline FloatImage logKernel(double sigma) {
  int side = int(std::ceil(6.0 * sigma));
  if (side % 2 == 0) side += 1;
  const int half = side / 2;
  FloatImage k(side, side);
  double sum = 0;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      const double r2 = double(i - half) * (i - half) + double(j - half) * (j - half);
      k(i, j) = (r2 - 2.0 * sigma * sigma) /
                (2.0 * M_PI * std::pow(sigma, 6.0)) * std::exp(-r2 / (2.0 * sigma * sigma));
      sum += k(i, j);
    }
  k -= sum / double(side * side);

  long long residue = 0;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      const long long m = std::llround(k(i, j) * 1099511627776.0);  // 2^40
      k(i, j) = double(m) / 1099511627776.0;
      residue += m;
    }
  k(half, half) = double(std::llround(k(half, half) * 1099511627776.0) - residue) /
                  1099511627776.0;
  return k;
}

inline FloatImage convolveReplicate(const FloatImage& img, const FloatImage& ker) {
  const long h = img.rows(), w = img.cols();
  const long kh = ker.rows(), kw = ker.cols();
  FloatImage out(h, w);
  for (long i = 0; i < h; ++i)
    for (long j = 0; j < w; ++j) {
      long double acc = 0;
      for (long u = 0; u < kh; ++u)
        for (long v = 0; v < kw; ++v) {
          long si = i - (u - kh / 2);
          long sj = j - (v - kw / 2);
          si = std::clamp(si, 0L, h - 1);
          sj = std::clamp(sj, 0L, w - 1);
          acc += (long double)ker(u, v) * img(si, sj);
        }
      out(i, j) = double(acc);
    }
  return out;
}

inline FloatImage logResponse(const GrayImage& img, double sigma) {
  FloatImage f(img.rows(), img.cols());
  for (long i = 0; i < img.rows(); ++i)
    for (long j = 0; j < img.cols(); ++j) f(i, j) = img(i, j);
  return convolveReplicate(f, logKernel(sigma));
}

// ---- quality ----

inline double localContrast(const GrayImage& img, const BitMask& mask) {
  const GrayImage med = medianFilter(img);
  long double acc = 0;
  long n = 0;
  for (long i = 0; i < img.rows(); ++i)
    for (long j = 0; j < img.cols(); ++j)
      if (mask(i, j)) {
        const long double d = (long double)img(i, j) - med(i, j);
        acc += d * d;
        ++n;
      }
  return std::sqrt(double(acc / n));
}

inline double illumination(const GrayImage& img, const BitMask& mask) {
  long double acc = 0;
  long n = 0;
  for (long i = 0; i < img.rows(); ++i)
    for (long j = 0; j < img.cols(); ++j)
      if (mask(i, j)) {
        acc += img(i, j);
        ++n;
      }
  return double(acc / n);
}

inline double sharpness(const GrayImage& img, const BitMask& mask, double sigma) {
  const FloatImage resp = logResponse(img, sigma);
  long double acc = 0;
  long n = 0;
  for (long i = 0; i < img.rows(); ++i)
    for (long j = 0; j < img.cols(); ++j)
      if (mask(i, j)) {
        acc += resp(i, j);
        ++n;
      }
  return double(acc / n);
}

inline double occlusion(const BitMask& mask) {
  long n = 0;
  for (long i = 0; i < mask.rows(); ++i)
    for (long j = 0; j < mask.cols(); ++j)
      if (mask(i, j)) ++n;
  return (double(mask.size()) - double(n)) / double(mask.size());
}

// ---- least squares via long-double normal equations ----

struct OlsOracle {
  std::vector<double> beta, se, t, p;
  double r2 = 0;
  double s2 = 0;
};

/// Gauss-Jordan inverse in long double.
inline std::vector<std::vector<long double>> invert(std::vector<std::vector<long double>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<long double>> inv(n, std::vector<long double>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(double(a[r][col])) > std::fabs(double(a[piv][col]))) piv = r;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const long double d = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= d;
      inv[col][c] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const long double f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

/// Two-sided Student-t tail by adaptive Simpson integration of the density.
double tSfTwoSided(double t, double df);

inline OlsOracle olsNormalEquations(const std::vector<std::vector<double>>& X,
                                    const std::vector<double>& y) {
  const std::size_t n = X.size();
  const std::size_t p = X[0].size();
  std::vector<std::vector<long double>> xtx(p, std::vector<long double>(p, 0));
  std::vector<long double> xty(p, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < p; ++a) {
      xty[a] += (long double)X[i][a] * y[i];
      for (std::size_t b = 0; b < p; ++b) xtx[a][b] += (long double)X[i][a] * X[i][b];
    }
  }
  const auto inv = invert(xtx);
  std::vector<long double> beta(p, 0);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) beta[a] += inv[a][b] * xty[b];

  long double ssres = 0, sstot = 0, ybar = 0;
  for (double v : y) ybar += v;
  ybar /= n;
  for (std::size_t i = 0; i < n; ++i) {
    long double fit = 0;
    for (std::size_t a = 0; a < p; ++a) fit += beta[a] * X[i][a];
    ssres += (y[i] - fit) * (y[i] - fit);
    sstot += (y[i] - ybar) * (y[i] - ybar);
  }
  const long double s2 = ssres / (long double)(n - p);

  OlsOracle out;
  out.s2 = double(s2);
  out.r2 = double(1.0L - ssres / sstot);
  for (std::size_t a = 0; a < p; ++a) {
    out.beta.push_back(double(beta[a]));
    const double se = double(std::sqrt((long double)s2 * inv[a][a]));
    out.se.push_back(se);
    const double tv = double(beta[a]) / se;
    out.t.push_back(tv);
    out.p.push_back(tSfTwoSided(tv, double(n - p)));
  }
  return out;
}

// ---- calendar (days-from-civil, independent of std::chrono) ----

inline long daysFromCivil(long y, unsigned m, unsigned d) {
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = unsigned(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + long(doe) - 719468;
}

}  // namespace oracle

#endif
