#pragma once

#include <cstdint>
#include <random>

namespace qcrt {

/// Stateless SplitMix64 mixing step. Used to derive independent seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seed for substream `stream` of the generator family rooted at `seed`.
/// Distinct streams are statistically independent; the mapping is pure,
/// so stream assignment does not depend on which worker runs the stream.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed) ^ mix64(stream + 0x632BE59BD9B4E019ull));
}

/// Deterministic random stream for one shot (or one classical draw sequence).
///
/// Wraps std::mt19937_64, whose output sequence is fully specified by the
/// standard. uniform() converts raw bits to a double in [0, 1) directly so
/// sampling never depends on the platform's distribution implementation.
class ShotRng {
 public:
  explicit ShotRng(std::uint64_t seed) : engine_(seed) {}
  ShotRng(std::uint64_t seed, std::uint64_t stream) : engine_(substream_seed(seed, stream)) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi] via rejection sampling (unbiased).
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % span;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return lo + v % span;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qcrt
