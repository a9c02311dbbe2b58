#ifndef IRIS_AGING_RNG_HPP
#define IRIS_AGING_RNG_HPP

#include <cmath>
#include <cstdint>
#include <string>

namespace iris_aging {

/// Counter-based generator: draw n of a stream is mix64(key ^ golden*(n+1)),
/// where mix64 is the murmur3 finalizer. Streams split by hashing a tag into
/// the key, so per-image / per-pair streams are independent of visit order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(mix64(seed ^ kGolden)) {}

  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
  }

  static std::uint64_t hashString(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  Rng stream(std::uint64_t tag) const {
    Rng r(*this);
    r.key_ = mix64(key_ ^ mix64(tag + kGolden));
    r.counter_ = 0;
    return r;
  }

  Rng stream(const std::string& tag) const { return stream(hashString(tag)); }

  std::uint64_t next() { return mix64(key_ ^ (kGolden * ++counter_)); }

  /// Uniform in [0, 1), 53-bit resolution.
  double unit() { return double(next() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1]; safe as the log argument below.
  double unitPos() { return double((next() >> 11) + 1) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Inclusive bounds.
  long uniformInt(long lo, long hi) {
    return lo + long(unit() * double(hi - lo + 1));
  }

  /// Box-Muller, cosine branch; consumes exactly two draws per call.
  double gaussian() {
    const double u1 = unitPos();
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace iris_aging

#endif
