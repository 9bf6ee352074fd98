#pragma once

// First-passage percolation on B_n, Richardson's growth model, duality
// and cover times.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cubeperc/cube.hpp"
#include "cubeperc/rng.hpp"
#include "cubeperc/stats.hpp"

namespace cubeperc {

inline constexpr double kNeverInfected = std::numeric_limits<double>::infinity();

inline constexpr int kMaxOrientedFppN = 26;
inline constexpr int kMaxUnorientedFppN = 22;

/// Quantile function q -> x of a passage-time law, q in [0, 1).
using InverseCdf = std::function<double(double)>;

/// Passage times X_e on the edges of B_n, indexed like EdgeId::index().
/// Either materialised, or drawn on demand from an addressable stream so
/// that edge e always receives the same value.  Unoriented use reads the
/// same value in both directions.
class WeightAssignment {
 public:
  /// Lazily drawn exponential(1) weights.
  static WeightAssignment exponential(int n, bool oriented, Stream field);
  /// Lazily drawn weights inv(1 - U) for the caller's quantile function;
  /// k4 records the Lipschitz constant of the density at the origin.
  static WeightAssignment from_inverse_cdf(int n, bool oriented, Stream field, InverseCdf inv,
                                           std::string tag, std::optional<double> k4 = std::nullopt);
  /// Every edge has weight w.
  static WeightAssignment constant(int n, bool oriented, double w);
  /// Explicit table of n * 2^n entries (entries for absent edges ignored).
  static WeightAssignment table(int n, bool oriented, std::vector<double> weights);

  int dimension() const noexcept { return n_; }
  bool oriented() const noexcept { return oriented_; }
  const std::string& distribution() const noexcept { return tag_; }
  std::optional<double> k4() const noexcept { return k4_; }

  /// Weight of lower -> lower + {bit+1}.
  double weight(Mask lower, int bit) const;
  double weight(const EdgeId& e) const { return weight(e.lower.bits(), e.coord - 1); }
  /// Same weights, read through the other orientation.
  WeightAssignment as_oriented(bool oriented) const;
  /// Copies every weight into a table; n <= 22.
  WeightAssignment materialize() const;
  /// Only valid for tables.
  void set(Mask lower, int bit, double w);

 private:
  enum class Source { exponential, quantile, constant, table };
  WeightAssignment(int n, bool oriented, Source src, std::string tag);

  int n_;
  bool oriented_;
  Source source_;
  std::string tag_;
  Stream field_{0};
  InverseCdf inv_;
  double constant_ = 1.0;
  std::vector<double> table_;
  std::optional<double> k4_;
};

/// Per-vertex first-passage or infection times from a source vertex.
struct InfectionTimes {
  int n = 0;
  Mask source = 0;
  std::vector<double> T;

  double at(Mask v) const { return T[v]; }
  double top() const { return T[full_mask(n)]; }
  /// A(t) = {v : T(v) <= t} as a sorted mask list.
  std::vector<Mask> infected_by(double t) const;
  bool complete() const;
};

/// min over monotone bottom -> top paths of the summed weights, by a
/// level-order recursion over all 2^n vertices; n <= 26.
double oriented_fpp_time(const WeightAssignment& weights);

/// Single-source shortest path times under the unoriented reading of the
/// weights (binary-heap best-first search); n <= 22.
InfectionTimes unoriented_infection_times(const WeightAssignment& weights, Mask source = 0);

/// Event-driven Richardson's model: an uninfected vertex is infected at
/// rate equal to its number of infected neighbours.  Each step draws the
/// holding time from Exp(boundary edge count) and infects the head of a
/// uniformly chosen boundary edge.  Vertices not infected by `horizon`
/// get kNeverInfected.  n <= 22.
InfectionTimes richardson_simulate(int n, Stream stream, double horizon = kNeverInfected, Mask source = 0);

/// max_v T(v); IncompleteCoverage if some vertex was never infected.
double cover_time(const InfectionTimes& times);

/// max_v |T(v) - min_w (T(w) + X_wv)| over v != source, checking that
/// times solve the shortest-path equations for the unoriented weights.
double bellman_residual(const InfectionTimes& times, const WeightAssignment& weights);

struct DualityResult {
  McEstimate forward;       ///< P(top in A_1(t))
  McEstimate intersection;  ///< P(A_1(s) meets A_2(t-s)), A_2 started at top
  double z;                 ///< |difference| in combined standard errors
};

struct DualityOutcome {
  bool forward;
  bool meet;
};

/// Replicate i of the duality experiment: one process from the bottom up to
/// time t, and an independent pair (from the bottom for s, from the top for
/// t - s) tested for a common infected vertex.
DualityOutcome duality_replicate(int n, double t, double s, std::uint64_t seed, std::uint64_t i);

/// Two independent families of replicates estimating both sides of the
/// duality identity.  RangeError unless 0 <= s <= t.
DualityResult duality_experiment(int n, double t, double s, std::uint64_t reps, std::uint64_t seed,
                                 int jobs = 1);

/// n! e^{(1+K4)(1-eps)} P(S_n <= 1-eps): the first-moment bound on
/// P(T <= 1 - eps) for oriented first-passage percolation.
double ofpp_first_moment_bound(int n, double eps, double K4);

/// Per base vertex y of B_{n-1}, comparison of T(y,0) and T(y,1) where the
/// last coordinate of B_n plays the {0,1} factor.
struct ConjectureRow {
  Mask y = 0;
  double cdf_gap = 0.0;  ///< max_t [F_(y,1)(t) - F_(y,0)(t)]
  double mean0 = 0.0;
  double mean1 = 0.0;
  double mean_diff_se = 0.0;
  bool cdf_flagged = false;   ///< gap beyond the DKW band
  bool mean_flagged = false;  ///< mean1 < mean0 - 3 se
};

struct ConjectureReport {
  int n = 0;
  std::uint64_t reps = 0;
  double alpha = 0.01;
  double cdf_threshold = 0.0;
  std::vector<ConjectureRow> rows;
  bool any_flagged = false;
};

/// Empirical check of the monotonicity conjecture on B_n = B_{n-1} x {0,1}.
/// A flag is evidence against the conjecture and is only reported.
/// The CDF band is 2 * dkw_epsilon(reps, alpha / (2 * 2^{n-1})), i.e.
/// family-wise level alpha over all y.  2 <= n <= 14.
ConjectureReport conjecture_monotonicity_test(int n, std::uint64_t reps, std::uint64_t seed, int jobs = 1,
                                              double alpha = 0.01);

/// max_t [F_hat_b(t) - F_hat_a(t)] for two samples.
double ecdf_excess(std::span<const double> a, std::span<const double> b);

}  // namespace cubeperc
