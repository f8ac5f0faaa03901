#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace hoax {

/// Seeded generator with a fully specified output stream: std::mt19937_64
/// (whose sequence is fixed by the C++ standard) plus bounded-integer and
/// unit-interval mappings that are spelled out here rather than delegated to
/// implementation-defined std distributions.
class Rng {
 public:
  static constexpr std::string_view kName =
      "mt19937_64; below(n): bitmask rejection; uniform(): (x >> 11) * 2^-53";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n), n >= 1. Draws x & mask until it is < n,
  /// where mask is the smallest 2^k - 1 covering n - 1.
  std::uint64_t below(std::uint64_t n);

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Forward Fisher-Yates over [0, n) stopped after k swaps; returns the first
/// k entries. k == n gives a full permutation.
std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t k,
                                                      Rng& rng);

}  // namespace hoax
