#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace ideaforge {

/// Deterministic 64-bit generator (splitmix64). Used instead of <random>
/// engines/distributions so that seeded runs are byte-identical across
/// platforms and standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  bool next_bool() noexcept { return (next() & 1U) != 0; }

  /// Uniform in [0, 1) with 53 bits of precision.
  double next_unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [0, n). n must be > 0; modulo bias is irrelevant here.
  std::uint64_t next_below(std::uint64_t n) noexcept { return next() % n; }

 private:
  std::uint64_t state_;
};

std::uint64_t fnv1a64(std::string_view s) noexcept;

/// Seed for a per-match generator, a deterministic function of the global
/// seed and the identifying strings. Stable across platforms and execution
/// order, so concurrent judging cannot reorder random draws.
std::uint64_t derive_seed(std::uint64_t global_seed,
                          std::initializer_list<std::string_view> parts) noexcept;

}  // namespace ideaforge
