#ifndef IRIS_AGING_MATCHER_HPP
#define IRIS_AGING_MATCHER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "iris_aging/image.hpp"

namespace iris_aging {

/// Real even-cosine Gabor bank applied along the angular direction of each
/// polar row; one sign bit per filter and grid point. Kernels are mean
/// subtracted so a constant texture produces a zero response.
struct EncoderConfig {
  int grid_rows = 8;
  int grid_cols = 128;
  std::vector<double> wavelengths = {8.0, 16.0, 32.0};
  double sigma_ratio = 0.5;  // Gaussian sigma = sigma_ratio * wavelength

  int filterCount() const { return static_cast<int>(wavelengths.size()); }
  int kernelLength(int f) const;
  bool operator==(const EncoderConfig& o) const = default;
};

struct IrisCode {
  EncoderConfig config;
  std::vector<std::uint8_t> bits;  // 0/1, length grid_rows*grid_cols*filterCount
  std::vector<std::uint8_t> mask;  // 1 = bit derived entirely from valid pixels

  std::size_t size() const { return bits.size(); }
  std::size_t index(int f, int r, int c) const {
    return (std::size_t(f) * config.grid_rows + r) * config.grid_cols + c;
  }
};

struct MatchResult {
  double hd = 0;           // fractional Hamming distance in [0,1]
  int best_rotation = 0;   // column shift applied to the second code
  long compared_bits = 0;  // mutually unmasked bits at the best shift
};

IrisCode encode(const PolarIris& polar, const EncoderConfig& cfg = {});

/// Minimum masked Hamming distance over circular column shifts in
/// [-max_rotation, +max_rotation]; ties go to the smaller |shift|, then to
/// the negative one.
MatchResult matchCodes(const IrisCode& a, const IrisCode& b, int max_rotation = 8);

/// Binary container: "IAC1" magic, config block, packed bit array, packed
/// mask array (LSB-first within each byte, little-endian scalars).
void saveIrisCode(const IrisCode& code, const std::string& path);
IrisCode loadIrisCode(const std::string& path);

/// Hex-string JSON rendering for debugging.
std::string irisCodeToJson(const IrisCode& code);

}  // namespace iris_aging

#endif
