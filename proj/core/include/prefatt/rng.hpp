// Deterministic per-trial random streams.
//
// The mapping from (master_seed, trial_index) to a stream is pinned so an
// independent implementation reproduces counts bit-exactly:
//
//   trial_seed = splitmix64_mix(master_seed + (trial_index + 1) * GAMMA)
//                with GAMMA = 0x9E3779B97F4A7C15  (the trial_index-th output
//                of the SplitMix64 sequence started at master_seed),
//   stream     = std::mt19937_64 seeded with trial_seed (the engine's output
//                sequence is fixed by the C++ standard),
//   uniform    = (next_u64 >> 11) * 2^-53  in [0, 1).
//
// All arithmetic is wrapping uint64, so the mapping is platform independent.
#pragma once

#include <cstdint>
#include <random>

namespace prefatt {

inline constexpr std::uint64_t kSplitMix64Gamma = 0x9E3779B97F4A7C15ull;

/// SplitMix64 output mixing function (Steele, Lea & Flood's finalizer).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Seed of the trial_index-th stream under master_seed. Random access: no
/// trial depends on another trial's derivation.
constexpr std::uint64_t derive_trial_seed(std::uint64_t master_seed,
                                          std::uint64_t trial_index) {
  return splitmix64_mix(master_seed + (trial_index + 1) * kSplitMix64Gamma);
}

/// One trial's private random stream.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) built from the top 53 bits, identically on
  /// every platform (std::uniform_real_distribution is deliberately avoided:
  /// its output is implementation defined).
  double next_uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

inline RngStream derive_stream(std::uint64_t master_seed,
                               std::uint64_t trial_index) {
  return RngStream(derive_trial_seed(master_seed, trial_index));
}

}  // namespace prefatt
