#pragma once

// Seedable randomness with a pinned algorithm so that every sampling-based
// result is reproducible bit-for-bit across platforms. std::mt19937_64 is
// fully specified by the standard; the uniform-double mapping below is ours
// (std::uniform_real_distribution is implementation-defined and must not
// be used anywhere in this codebase).

#include <cstdint>
#include <random>
#include <string_view>

namespace urlvr {

// Generator name recorded in output artifacts.
inline constexpr std::string_view kRngName = "mt19937_64";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // rejection-free modulo is fine here: n is tiny relative to 2^64
    return engine_() % n;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 — used to derive independent stream seeds from
/// (base seed, step, index) tuples.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1) + 0xbf58476d1ce4e5b9ULL * (c + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace urlvr
