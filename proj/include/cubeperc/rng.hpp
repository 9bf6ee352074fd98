#pragma once

#include <cmath>
#include <cstdint>

namespace cubeperc {

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based SplitMix64 stream.
///
/// The n-th output of a stream with key K is mix64(K + (n+1)*gamma), so
/// any draw can be addressed directly with at(n) without advancing state.
/// Edge fields use at(edge_index) so that the same edge sees the same
/// uniform regardless of traversal order; simulations use next().
/// Streams for replicate i of a run with seed s come from
/// Stream::derive(s, i) and are independent of scheduling.
class Stream {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  constexpr explicit Stream(std::uint64_t key) noexcept : key_(key) {}

  static constexpr Stream derive(std::uint64_t seed, std::uint64_t index,
                                 std::uint64_t salt = 0) noexcept {
    return Stream(mix64(mix64(seed ^ 0x6a09e667f3bcc909ULL) + mix64(index + 1) * 3 +
                        mix64(salt ^ 0xbb67ae8584caa73bULL)));
  }

  /// Independent child stream, e.g. for a second process in one replicate.
  constexpr Stream split(std::uint64_t salt) const noexcept {
    return Stream(mix64(key_ ^ mix64(salt + 0x3c6ef372fe94f82bULL)));
  }

  constexpr std::uint64_t key() const noexcept { return key_; }

  constexpr std::uint64_t at(std::uint64_t counter) const noexcept {
    return mix64(key_ + (counter + 1) * kGamma);
  }

  std::uint64_t next() noexcept { return at(counter_++); }

  /// Uniform on (0,1]; never zero so -log is finite.
  static double to_unit(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
  }

  double uniform_at(std::uint64_t counter) const noexcept { return to_unit(at(counter)); }
  double uniform() noexcept { return to_unit(next()); }

  /// Exponential with the given rate.
  double exponential(double rate = 1.0) noexcept { return -std::log(uniform()) / rate; }

  /// Uniform integer in [0, bound) by multiply-shift; bias < 2^-32 for the
  /// bounds used here.
  std::uint64_t below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

inline constexpr const char* kRngName = "splitmix64-counter";

}  // namespace cubeperc
