#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace sossr {

// SplitMix64 step.  Used both as the core generator and for seed derivation so
// that all randomness is reproducible across platforms and standard libraries.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Derives an independent substream seed from a root seed, a stage tag and an
/// index.  Stable: the same (root, stage, index) always yields the same seed.
inline std::uint64_t substreamSeed(std::uint64_t root, std::string_view stage,
                                   std::uint64_t index = 0) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a over the stage tag
  for (char ch : stage) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  std::uint64_t s = root ^ h;
  std::uint64_t a = splitmix64(s);
  s = a ^ (index * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull);
  return splitmix64(s);
}

/// Deterministic generator with explicit distributions.  std:: distributions
/// are implementation-defined, so uniform and normal draws are spelled out.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed), has_spare_(false), spare_(0.0) {}

  std::uint64_t nextU64() { return splitmix64(state_); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(nextU64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (pairs cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    // Guard against log(0).
    double r = std::sqrt(-2.0 * std::log1p(-u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// Uniform integer in [0, n).
  int uniformInt(int n) {
    return static_cast<int>(static_cast<double>(n) * uniform01());
  }

 private:
  std::uint64_t state_;
  bool has_spare_;
  double spare_;
};

}  // namespace sossr
