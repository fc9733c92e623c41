#pragma once

// Seedable random variate primitives. Every sampler in the library draws from
// an RngStream; a stream is owned by one thread at a time and replicate
// streams are derived from a master seed so results do not depend on how work
// is scheduled.

#include <cstdint>
#include <random>

namespace epspy {

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  /// Independent child stream keyed by (this stream's seed, key).
  [[nodiscard]] RngStream split(std::uint64_t key) const {
    return RngStream(mix(seed_ ^ mix(key + 0x632be59bd9b4e019ULL)));
  }

  /// Stream for replicate `index` of a run seeded by `seed`.
  [[nodiscard]] static RngStream derive(std::uint64_t seed, std::uint64_t index) {
    return RngStream(seed).split(index);
  }

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  /// Raw 64 random bits.
  std::uint64_t next() { return engine_(); }

  /// SplitMix64 finalizer, used to decorrelate nearby seeds.
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Uniform on the open interval (0,1); never returns 0 or 1.
double uniform(RngStream& rng);

/// Standard normal (Marsaglia polar method, second variate discarded).
double normal(RngStream& rng);

/// Unit-rate exponential.
double exponential(RngStream& rng);

/// Logarithm of a unit-rate Gamma(shape) variate. Stays finite for tiny shapes
/// where the variate itself underflows. Throws ParameterError for shape <= 0.
double log_gamma_variate(double shape, RngStream& rng);

/// Unit-rate Gamma(shape) variate. Throws ParameterError for shape <= 0.
double gamma(double shape, RngStream& rng);

/// A Beta(a,b) draw together with an accurately computed complement.
struct BetaDraw {
  double value;           // V
  double complement;      // 1 - V, not computed by subtraction
  double log_complement;  // log(1 - V)
};

/// Beta(a,b) as G_a / (G_a + G_b) evaluated in log space.
BetaDraw beta_draw(double a, double b, RngStream& rng);

/// Beta(a,b) variate in (0,1). Throws ParameterError for a <= 0 or b <= 0.
double beta(double a, double b, RngStream& rng);

}  // namespace epspy
