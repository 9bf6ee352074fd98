#pragma once

// Counting monotone paths of B_n by how many edges they share with a fixed
// reference path.  The reference path is always the identity permutation
// (1, 2, ..., n); by symmetry every reference path gives the same counts.

#include <array>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cubeperc/cube.hpp"

namespace cubeperc {

using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(int m);

/// Breakpoint sequence 0 = r_0 < r_1 < ... < r_k < r_{k+1} = n+1 marking
/// the terminal positions of the edges a path shares with the reference.
class OverlapSeq {
 public:
  OverlapSeq(std::vector<int> r, int n);

  int n() const noexcept { return n_; }
  /// Number of shared edges.
  int k() const noexcept { return static_cast<int>(r_.size()) - 2; }
  const std::vector<int>& breakpoints() const noexcept { return r_; }
  /// Block lengths s_i = r_{i+1} - r_i, i = 0..k; they sum to n+1.
  std::vector<int> blocks() const;

  bool operator==(const OverlapSeq&) const = default;

 private:
  std::vector<int> r_;
  int n_;
};

/// Position i is a breakpoint when pi(1..i-1) is a permutation of
/// {1..i-1} and pi(i) = i.  p must be a permutation of {1..n}.
OverlapSeq overlap_breakpoints(const PathPerm& p);

/// f(n,k) for k = 0..n and its upper cumulative sums F(n,k).
struct OverlapTable {
  int n = 0;
  std::vector<BigInt> f;
  std::vector<BigInt> F;

  static OverlapTable from_counts(int n, std::vector<BigInt> f);
  bool operator==(const OverlapTable&) const = default;
};

inline constexpr int kMaxBruteForceN = 8;
inline constexpr int kMaxDpN = 60;

/// Enumerates all n! paths; n <= kMaxBruteForceN.
OverlapTable overlap_table_bruteforce(int n);

/// Composition convolution over block sizes; n <= kMaxDpN.
OverlapTable overlap_table_dp(int n);

/// a(m) for m = 0..m_max: permutations of m elements with no breakpoint.
/// Satisfies m! = a(m) + sum_{t=1..m} a(t-1) (m-t)!.
std::vector<BigInt> block_counts(int m_max);

/// Result of a bound that holds only up to a (1+o(1)) factor.
struct LeadingTerm {
  double log_value;
  bool asymptotic_only;  // always true: never assert at finite n
};

/// log((k+1)(n-k)!), the leading term of F(n,k) for k = o(n).
LeadingTerm bound_small_k(int n, int k);

/// n - n^{3/4}/2, the smallest k the large-k bound covers.
double large_k_threshold(int n);

/// log((n-k+1)(2n^{7/8})^{n-k}); an upper bound on log F(n,k) for every
/// k >= large_k_threshold(n).  RangeError below the threshold.
double bound_large_k(int n, int k);

struct MiddleKBound {
  /// True when no k satisfies k <= n - 5e(n+3)^{2/3} (or n < 25).
  bool vacuous = true;
  /// log(n^6 (n-k)!), bound on log f(n,k).
  double log_f_bound = 0.0;
  /// log of 2n^6(n-k)! + m (2n^{7/8})^{m-1}, m = ceil(5e(n+3)^{2/3});
  /// only present when m <= ceil(n^{3/4}/2).
  std::optional<double> log_F_bound;
};

/// 5e(n+3)^{2/3}.
double middle_k_margin(double n);

/// Middle-range bounds.  Reports vacuous when the k-range for this n is
/// empty; RangeError when it is not empty but k lies outside it.
MiddleKBound bound_middle_k(long long n, long long k);

/// prod (s_i - 1)!, an upper bound on the number of paths with sequence r.
BigInt g_weight(const OverlapSeq& r);
/// prod [(s_i - 1)! - 1 + [s_i = 1]], the sharper bound.
BigInt g1_weight(const OverlapSeq& r);

/// Three factorial inequalities; each entry is empty when (a, b, j) lies
/// outside that inequality's range.
///  (i)   a! b! <= (a+j)! (b-j)!                     for a >= b >= j >= 0
///  (ii)  (a!-1)((a+j)!-1) <= ((a-1)!-1)((a+j+1)!-1)  for a >= 4, or a = 3, j >= 1
///  (iii) (a!-1)/(b!-1) > a!/b! > (a/e)^{a-b}         for a > b > 0
/// RangeError when no part applies.
struct FactorialFacts {
  std::optional<bool> log_convex;
  std::optional<bool> shifted_product;
  std::optional<bool> ratio_chain;
};
FactorialFacts factorial_facts_check(int a, int b, int j);

/// Edges (lower mask, bit) traversed by the path p from start.
std::vector<std::pair<Mask, int>> path_edges(const PathPerm& p, Mask start);

/// Number of edges the two paths have in common.
int shared_edge_count(const PathPerm& a, Mask start_a, const PathPerm& b, Mask start_b);

/// Endpoints for the path-transfer bijection in B_{n+2L}: x1 != x2 at
/// level L, y1 != y2 at level n+L, x_i below y_i.
struct SupplementConfig {
  int n;
  int L;
  Vertex x1, x2, y1, y2;

  /// Throws InvalidInput on level, containment or distinctness violations.
  void validate() const;
  /// The reference path: y1 \ x1 added in increasing label order.
  PathPerm reference() const;
};

/// Maps a path x1 -> y1 (a permutation of y1 \ x1) to a path x2 -> y2.
/// Coordinates are first relabelled so that x1 = {1..L}, y1 = {1..n+L}
/// and the reference path is increasing; the image copies p wherever p's
/// label lies in y2 \ x2 and otherwise substitutes, in matching increasing
/// order, the labels of y2 \ x2 outside {L+1..L+n}.  The result is mapped
/// back to the original labels.
PathPerm supplement_bijection(const SupplementConfig& cfg, const PathPerm& p);

/// Maximum over reference paths gamma: x1 -> y1 of the number of paths
/// x2 -> y2 sharing at least k edges with gamma, by exhaustive search;
/// n + 2L <= 10.
BigInt f1_exact(const SupplementConfig& cfg, int k);

}  // namespace cubeperc
