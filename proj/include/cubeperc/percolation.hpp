#pragma once

// Bernoulli bond percolation on B_n, oriented (edges usable only upward)
// and unoriented.

#include <cstdint>
#include <vector>

#include "cubeperc/combinatorics.hpp"
#include "cubeperc/cube.hpp"
#include "cubeperc/rng.hpp"
#include "cubeperc/stats.hpp"

namespace cubeperc {

/// Largest n for which configurations are materialised (2^n masks).
inline constexpr int kMaxMaterializedN = 24;
/// Largest n for the lazy connectivity scans (2^n visited bits).
inline constexpr int kMaxLazyN = 28;

/// Open edges stored per lower vertex: bit j of open_up[v] is set when the
/// edge v -> v + {j+1} is open.  Unoriented readers use the same bits in
/// both directions.
class OpenEdgeSet {
 public:
  OpenEdgeSet(int n, bool oriented);

  int dimension() const noexcept { return n_; }
  bool oriented() const noexcept { return oriented_; }
  bool is_open(Mask lower, int bit) const noexcept { return (open_up_[lower] >> bit & 1U) != 0; }
  void set_open(Mask lower, int bit, bool open = true);
  Mask open_up(Mask lower) const noexcept { return open_up_[lower]; }
  std::uint64_t open_count() const noexcept;

 private:
  int n_;
  bool oriented_;
  std::vector<Mask> open_up_;
};

/// Edge e is open iff field.uniform_at(e.index()) <= p.  Using one
/// addressable uniform per edge couples all p: open(p1) is a subset of
/// open(p2) whenever p1 <= p2.
bool edge_open(const Stream& field, std::uint64_t edge, double p) noexcept;

/// Materialised sample; n <= kMaxMaterializedN.
OpenEdgeSet sample_open_edges(int n, double p, const Stream& field, bool oriented = true);

/// Level-order scan from the bottom along open upward edges.
bool oriented_connected(const OpenEdgeSet& cfg);
/// Breadth-first search over open edges in either direction.
bool unoriented_connected(const OpenEdgeSet& cfg);

/// The same decisions drawing edge states from the field on demand, so
/// sparse configurations at small p cost only the explored cluster.
/// Both agree with the materialised versions on the same field.
bool oriented_connected_lazy(int n, double p, const Stream& field);
bool unoriented_connected_lazy(int n, double p, const Stream& field);

/// Exact probability by summing over all 2^{n 2^{n-1}} configurations;
/// n <= 3.
double exact_connection_probability(int n, double p, bool oriented);

/// Number of monotone bottom -> top paths all of whose edges are open;
/// n <= 20 (counts stay below 20! < 2^64 during the level DP).
BigInt count_open_paths(const OpenEdgeSet& cfg);

/// Replicates at p = c/n; replicate i draws its field from
/// Stream::derive(seed, i).  RangeError when c/n is outside [0, 1].
McEstimate mc_connection_probability(int n, double c, std::uint64_t reps, bool oriented,
                                     std::uint64_t seed, int jobs = 1);

}  // namespace cubeperc
