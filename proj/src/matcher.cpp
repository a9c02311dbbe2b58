#include "iris_aging/matcher.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include <json.hpp>

namespace iris_aging {

int EncoderConfig::kernelLength(int f) const {
  const double sigma = sigma_ratio * wavelengths.at(f);
  return 2 * static_cast<int>(std::ceil(3.0 * sigma)) + 1;
}

namespace {

std::vector<double> gaborKernel(double wavelength, double sigma_ratio) {
  const double sigma = sigma_ratio * wavelength;
  const int half = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * half + 1);
  double sum = 0.0;
  for (int i = 0; i < static_cast<int>(k.size()); ++i) {
    const double d = i - half;
    k[i] = std::exp(-d * d / (2.0 * sigma * sigma)) * std::cos(2.0 * M_PI * d / wavelength);
    sum += k[i];
  }
  const double mean = sum / double(k.size());
  for (auto& v : k) v -= mean;  // zero DC
  return k;
}

void validateConfig(const EncoderConfig& cfg) {
  if (cfg.grid_rows < 1 || cfg.grid_cols < 1) fail(Errc::BadConfig, "encoder grid must be >= 1x1");
  if (cfg.wavelengths.empty()) fail(Errc::BadConfig, "encoder needs at least one wavelength");
  for (double w : cfg.wavelengths)
    if (!(w > 0.0)) fail(Errc::BadConfig, "wavelengths must be positive");
  if (!(cfg.sigma_ratio > 0.0)) fail(Errc::BadConfig, "sigma_ratio must be positive");
}

}  // namespace

IrisCode encode(const PolarIris& polar, const EncoderConfig& cfg) {
  validateConfig(cfg);
  const Eigen::Index rows = polar.rows(), cols = polar.cols();
  if (rows < 1 || cols < 1) fail(Errc::PolarTooSmall, "empty polar texture");
  for (int f = 0; f < cfg.filterCount(); ++f)
    if (cols < cfg.kernelLength(f))
      fail(Errc::PolarTooSmall, "polar texture narrower than the largest filter kernel");

  std::vector<std::vector<double>> kernels;
  kernels.reserve(cfg.wavelengths.size());
  for (double w : cfg.wavelengths) kernels.push_back(gaborKernel(w, cfg.sigma_ratio));

  // grid point (r, c) samples texture row/col floor((idx + 0.5) * dim / grid_dim)
  std::vector<Eigen::Index> rowAt(cfg.grid_rows), colAt(cfg.grid_cols);
  for (int r = 0; r < cfg.grid_rows; ++r)
    rowAt[r] = std::min<Eigen::Index>(rows - 1, Eigen::Index((r + 0.5) * rows / cfg.grid_rows));
  for (int c = 0; c < cfg.grid_cols; ++c)
    colAt[c] = std::min<Eigen::Index>(cols - 1, Eigen::Index((c + 0.5) * cols / cfg.grid_cols));

  IrisCode code;
  code.config = cfg;
  code.bits.assign(std::size_t(cfg.filterCount()) * cfg.grid_rows * cfg.grid_cols, 0);
  code.mask.assign(code.bits.size(), 0);

  for (int f = 0; f < cfg.filterCount(); ++f) {
    const auto& k = kernels[f];
    const Eigen::Index half = Eigen::Index(k.size() / 2);
    for (int r = 0; r < cfg.grid_rows; ++r) {
      const Eigen::Index tr = rowAt[r];
      for (int c = 0; c < cfg.grid_cols; ++c) {
        const Eigen::Index tc = colAt[c];
        double resp = 0.0;
        bool valid = true;
        for (Eigen::Index i = 0; i < Eigen::Index(k.size()); ++i) {
          Eigen::Index col = (tc + i - half) % cols;
          if (col < 0) col += cols;  // circular along the angle
          resp += k[i] * double(polar.texture(tr, col));
          valid = valid && polar.mask(tr, col);
        }
        const std::size_t idx = code.index(f, r, c);
        code.bits[idx] = resp >= 0.0 ? 1 : 0;
        code.mask[idx] = valid ? 1 : 0;
      }
    }
  }
  return code;
}

MatchResult matchCodes(const IrisCode& a, const IrisCode& b, int max_rotation) {
  if (!(a.config == b.config)) fail(Errc::ConfigMismatch, "encoder configs differ");
  if (a.bits.size() != b.bits.size() || a.mask.size() != a.bits.size())
    fail(Errc::ConfigMismatch, "code lengths differ");
  if (max_rotation < 0) fail(Errc::BadConfig, "max_rotation must be >= 0");

  const int G = a.config.grid_cols;
  const int R = a.config.grid_rows;
  const int F = a.config.filterCount();

  // shift visit order implements the tie-break: |shift| ascending, negative first
  std::vector<int> shifts;
  shifts.push_back(0);
  for (int s = 1; s <= max_rotation; ++s) {
    shifts.push_back(-s);
    shifts.push_back(s);
  }

  bool anyOverlap = false;
  MatchResult best;
  best.hd = 2.0;

  for (int s : shifts) {
    long compared = 0, disagree = 0;
    for (int f = 0; f < F; ++f)
      for (int r = 0; r < R; ++r)
        for (int c = 0; c < G; ++c) {
          int cb = (c + s) % G;
          if (cb < 0) cb += G;
          const std::size_t ia = a.index(f, r, c);
          const std::size_t ib = b.index(f, r, cb);
          if (a.mask[ia] && b.mask[ib]) {
            ++compared;
            disagree += a.bits[ia] ^ b.bits[ib];
          }
        }
    if (compared == 0) continue;
    anyOverlap = true;
    const double hd = double(disagree) / double(compared);
    if (hd < best.hd) {
      best.hd = hd;
      best.best_rotation = s;
      best.compared_bits = compared;
    }
  }
  if (!anyOverlap) fail(Errc::NoOverlap, "no mutually unmasked bits at any rotation");
  return best;
}

namespace {

constexpr char kMagic[4] = {'I', 'A', 'C', '1'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void putLe(std::ostream& out, T v) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T getLe(std::istream& in) {
  unsigned char buf[sizeof(T)];
  in.read(reinterpret_cast<char*>(buf), sizeof(T));
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

std::vector<std::uint8_t> packBits(const std::vector<std::uint8_t>& bits) {
  std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) bytes[i / 8] |= std::uint8_t(1u << (i % 8));
  return bytes;
}

std::vector<std::uint8_t> unpackBits(const std::vector<std::uint8_t>& bytes, std::size_t n) {
  std::vector<std::uint8_t> bits(n, 0);
  for (std::size_t i = 0; i < n; ++i) bits[i] = (bytes[i / 8] >> (i % 8)) & 1u;
  return bits;
}

std::string hexString(const std::vector<std::uint8_t>& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xF]);
  }
  return s;
}

}  // namespace

void saveIrisCode(const IrisCode& code, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write " + path);
  out.write(kMagic, 4);
  putLe<std::uint32_t>(out, kVersion);
  putLe<std::uint32_t>(out, std::uint32_t(code.config.grid_rows));
  putLe<std::uint32_t>(out, std::uint32_t(code.config.grid_cols));
  putLe<std::uint32_t>(out, std::uint32_t(code.config.filterCount()));
  putLe<double>(out, code.config.sigma_ratio);
  for (double w : code.config.wavelengths) putLe<double>(out, w);
  putLe<std::uint64_t>(out, code.bits.size());
  const auto bits = packBits(code.bits);
  const auto mask = packBits(code.mask);
  out.write(reinterpret_cast<const char*>(bits.data()), std::streamsize(bits.size()));
  out.write(reinterpret_cast<const char*>(mask.data()), std::streamsize(mask.size()));
  if (!out) fail(Errc::IoError, "short write to " + path);
}

IrisCode loadIrisCode(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    fail(Errc::ParseError, path + ": not an IAC1 iris code");
  if (getLe<std::uint32_t>(in) != kVersion) fail(Errc::ParseError, path + ": unsupported version");

  IrisCode code;
  code.config.grid_rows = int(getLe<std::uint32_t>(in));
  code.config.grid_cols = int(getLe<std::uint32_t>(in));
  const auto nf = getLe<std::uint32_t>(in);
  code.config.sigma_ratio = getLe<double>(in);
  code.config.wavelengths.resize(nf);
  for (auto& w : code.config.wavelengths) w = getLe<double>(in);
  const auto nbits = getLe<std::uint64_t>(in);
  const std::size_t nbytes = (std::size_t(nbits) + 7) / 8;
  std::vector<std::uint8_t> bits(nbytes), mask(nbytes);
  in.read(reinterpret_cast<char*>(bits.data()), std::streamsize(nbytes));
  in.read(reinterpret_cast<char*>(mask.data()), std::streamsize(nbytes));
  if (!in) fail(Errc::ParseError, path + ": truncated iris code");
  code.bits = unpackBits(bits, std::size_t(nbits));
  code.mask = unpackBits(mask, std::size_t(nbits));
  const std::size_t expected =
      std::size_t(code.config.grid_rows) * code.config.grid_cols * code.config.filterCount();
  if (code.bits.size() != expected)
    fail(Errc::ParseError, path + ": bit count inconsistent with config");
  return code;
}

std::string irisCodeToJson(const IrisCode& code) {
  nlohmann::json j;
  j["magic"] = "IAC1";
  j["grid_rows"] = code.config.grid_rows;
  j["grid_cols"] = code.config.grid_cols;
  j["wavelengths"] = code.config.wavelengths;
  j["sigma_ratio"] = code.config.sigma_ratio;
  j["bits"] = hexString(packBits(code.bits));
  j["mask"] = hexString(packBits(code.mask));
  return j.dump(2);
}

}  // namespace iris_aging
