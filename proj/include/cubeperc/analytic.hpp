#pragma once

// Closed forms and bounds: extinction probabilities, Erlang tails, the
// joint-deviation scale R(n,k), second-moment ratios, the branching
// translation moments and the constants bracketing infection and cover
// times.

#include <map>
#include <string>
#include <utility>

#include "cubeperc/combinatorics.hpp"
#include "cubeperc/cube.hpp"

namespace cubeperc {

struct ExtinctionResult {
  double c;
  double x;           ///< smallest root of x = exp(c(x-1)) in [0,1]
  double limit_prob;  ///< (1-x)^2
};

/// DomainError for c <= 0.  x = 1 for c <= 1; otherwise bisection to width
/// 1e-9 followed by at most five Newton steps.
ExtinctionResult extinction_probability(double c);

/// P(S_n <= u) for a sum of n unit exponentials, i.e. P(Poisson(u) >= n).
double erlang_tail(int n, double u);

/// log R(n,k) with R(n,k) = 2^{2n-2k} e^{2n-k} (2n-k)^{-(2n-k)}
///   / [(n-k)^{1/2} (2n-k)^{1/2}];  1 <= k <= n-1.
double log_R(int n, int k);

/// Constant with R(n,k-1)/R(n,k) <= K3/n over 2 <= k <= n-1, n <= 200.
inline constexpr double kDefaultK3 = 20.0;

/// binom(2n-2k, n-k) / (2n-k)!, the scale multiplying [e^{-2}, 9e^{-1}] in
/// the two-sided bracket of P(S_n <= 1, S_n' <= 1).
double joint_tail_scale(int n, int k);

/// Bracket [e^{-K4 u} P(S_n <= u), e^{(1+K4)u} P(S_n <= u)] for
/// P(T_n <= u) when the summands have a density f with f(0) = 1 and
/// |f(x) - 1| <= K4 x.  The lower end holds in the limit n -> infinity.
std::pair<double, double> lipschitz_tail_bounds(int n, double u, double K4);

/// [sum_k f(n,k) p^{-k} / n!], the ratio E N^2 / (E N)^2 for the number N
/// of open monotone paths at edge probability p.
double second_moment_ratio(const OverlapTable& table, double p);

/// (E N)^2 / E N^2, a lower bound on P(0 connected to 1 by an open
/// oriented path).
double second_moment_lower_bound(const OverlapTable& table, double p);

/// Probability that a rate-n walk from the bottom is at x after time t.
double heat_kernel(Vertex x, double t);
/// Same, by level.
double heat_kernel(int level, int n, double t);

/// E Z(x,t) = e^{nt} p(x,t) for the branching translation process.
double btp_mean(Vertex x, double t);
double btp_mean(int level, int n, double t);

/// E Z(top, t)^2 from the split-time integral
///   m2 = m1 + 2 sum_i int_0^t sum_y m1(y,s) m1(top-y,t-s) m1(top-y-e_i,t-s) ds
/// summing exactly over all y and i; n <= 10.
double btp_second_moment(double t, int n);

/// G(s,u) = ln[e^{-s} (1 + (e^{-4(u-s)} - e^{-4u}) / (1 - e^{-2u})^2)];
/// RangeError outside 0 <= s <= u.
double G_function(double s, double u);
/// d^2 G / ds^2 = 16 c (1-c) e^{4s} / [1 + c(e^{4s} - 1)]^2 with
/// c = e^{-4u} / (1 - e^{-2u})^2.
double G_second_derivative(double s, double u);
/// -G(u,u) at u = ln(1+sqrt 2) + eps.
double V_epsilon(double eps);

/// c^n, an upper bound on the unoriented connection probability at
/// p = c/n; RangeError unless 0 < c < 1.
double subcritical_bound(int n, double c);

/// btp_lower, single_vertex_upper, reach_constant, cover_upper, cover_lower.
std::map<std::string, double> theorem_constants();

}  // namespace cubeperc
