#pragma once

#include <cstdint>
#include <random>

namespace ecm {

/// SplitMix64 finalizer; bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

/// Stream seed for replica `replica` under `master_seed`.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t replica);

/// A deterministic random stream. All variates are produced from raw engine
/// output with fixed bit manipulations, so sequences do not depend on the
/// standard library's distribution implementations.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  static Stream for_replica(std::uint64_t master_seed, std::uint64_t replica) {
    return Stream(derive_seed(master_seed, replica));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), unbiased (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace ecm
