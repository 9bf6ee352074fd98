#pragma once

// Branching translation process on B_n: every particle gives birth at
// rate n, the offspring displaced to a uniformly chosen neighbour.

#include <cstdint>
#include <vector>

#include "cubeperc/cube.hpp"
#include "cubeperc/rng.hpp"

namespace cubeperc {

inline constexpr std::uint64_t kDefaultParticleCap = 1'000'000;
inline constexpr int kMaxBtpN = 24;

enum class BtpStatus { ok, overflow };

struct BtpPopulation {
  int n = 0;
  std::vector<std::uint64_t> counts;  ///< Z(x) indexed by mask
  std::uint64_t total = 0;
  double time = 0.0;  ///< snapshot time, or the overflow time
  std::uint64_t cap = kDefaultParticleCap;
  BtpStatus status = BtpStatus::ok;

  std::uint64_t at(Mask x) const { return counts[x]; }
};

/// Population at t_end started from one particle at the bottom.  Births
/// are scheduled with a global Exp(n * total) clock and a uniformly chosen
/// parent.  If a birth would exceed cap the run stops with status overflow
/// and `time` set to that birth time.
BtpPopulation btp_simulate(int n, double t_end, std::uint64_t cap, Stream stream);

struct FirstHit {
  double time;    ///< hitting time, or the overflow time when censored
  bool censored;  ///< true when the cap was reached first (time is a lower bound)
};

/// First time a particle occupies target.
FirstHit btp_first_hit(int n, Mask target, std::uint64_t cap, Stream stream);

}  // namespace cubeperc
