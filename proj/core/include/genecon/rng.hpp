#pragma once

#include <cstdint>
#include <initializer_list>

namespace genecon {

/// Counter-based 64-bit stream. Draw i of the stream with key k is
/// splitmix64_finalize(k + (i + 1) * golden_gamma), so a stream is fully
/// determined by its key and independent streams never share state.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  /// splitmix64 output finalizer.
  static std::uint64_t mix(std::uint64_t x) noexcept;

  /// Key of the substream addressed by `path` under `seed`, e.g.
  /// derive(seed, {replicate}) or derive(key, {family, individual}).
  static std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept;
  /// Standard normal by inverse CDF of uniform().
  double normal() noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Standard normal quantile: Acklam's rational approximation followed by one
/// Halley correction step against std::erfc. Requires 0 < p < 1.
double normal_quantile(double p) noexcept;

// Recorded in report metadata.
inline constexpr const char* kRngDescription =
    "splitmix64 counter stream keyed by (seed, replicate, family, individual)";
inline constexpr const char* kNormalDescription =
    "inverse CDF (Acklam rational approximation + one Halley step)";

}  // namespace genecon
