#pragma once

#include <cstdint>
#include <random>

namespace trapo {

/// Deterministic random source. Wraps std::mt19937_64 but performs all
/// variate conversion itself, so streams are identical across standard
/// library implementations (the distribution adaptors in <random> are not
/// specified bit-exactly).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform index in [0, n). n must be >= 1.
  std::size_t next_index(std::size_t n) {
    // Rejection-free modulo is fine here: n is tiny relative to 2^64, the
    // bias is far below anything observable at desk scale.
    return static_cast<std::size_t>(engine_() % n);
  }

  /// Standard normal via Box-Muller (deterministic, no cached spare).
  double next_normal() {
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  /// Derive an independent child stream; advances this stream by one draw.
  Rng split() { return Rng(next_u64() ^ 0x9e3779b97f4a7c15ULL); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace trapo
