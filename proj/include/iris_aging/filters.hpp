#ifndef IRIS_AGING_FILTERS_HPP
#define IRIS_AGING_FILTERS_HPP

#include "iris_aging/image.hpp"

namespace iris_aging {

inline constexpr double kDefaultLogSigma = 1.4;

/// Discretized Laplacian-of-Gaussian kernel. Side length is ceil(6*sigma)
/// rounded up to odd. Entries are mean-subtracted, then quantized to dyadic
/// rationals (multiples of 2^-40) with the residue folded into the center
/// tap, giving an exactly zero sum: the response to a constant image is
/// exactly 0.0 regardless of accumulation order.
FloatImage logKernel(double sigma);

/// 2D convolution (kernel flipped; all kernels here are symmetric) with
/// edge-replicated borders.
FloatImage convolveReplicate(const FloatImage& img, const FloatImage& kernel);

/// Signed LoG response of an image expression.
template <typename Derived>
FloatImage logFilter(const Eigen::ArrayBase<Derived>& img, double sigma = kDefaultLogSigma) {
  FloatImage x = img.derived().template cast<double>();
  return convolveReplicate(x, logKernel(sigma));
}

/// Sliding median over the 10x10 window that pixel (i,j) anchors at rows
/// i-4..i+5, cols j-4..j+5. Windows are clipped at the borders and the
/// median of k surviving pixels is element (k-1)/2 of the sorted window
/// (lower of the two central values when k is even).
GrayImage medianFilter10x10(const GrayImage& img);

}  // namespace iris_aging

#endif
