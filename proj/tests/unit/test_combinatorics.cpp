#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <map>
#include <set>

#include "cubeperc/combinatorics.hpp"
#include "cubeperc/errors.hpp"

using namespace cubeperc;

namespace {

std::vector<BigInt> big(std::initializer_list<long> xs) {
  std::vector<BigInt> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

// Frozen from an independent mpmath/brute-force script (tests/oracles).
const std::vector<std::vector<BigInt>> kOracleF = {
    big({0, 1}),
    big({1, 0, 1}),
    big({3, 2, 0, 1}),
    big({14, 6, 3, 0, 1}),
    big({77, 29, 9, 4, 0, 1}),
    big({497, 160, 45, 12, 5, 0, 1}),
    big({3676, 1031, 249, 62, 15, 6, 0, 1}),
};

std::vector<PathPerm> all_perms(std::vector<int> labels, int n) {
  std::sort(labels.begin(), labels.end());
  std::vector<PathPerm> out;
  do {
    out.emplace_back(labels, n);
  } while (std::next_permutation(labels.begin(), labels.end()));
  return out;
}

}  // namespace

TEST_SUITE("combinatorics") {

TEST_CASE("overlap breakpoints") {
  const auto id = overlap_breakpoints(PathPerm::identity(4));
  CHECK(id.k() == 4);
  CHECK(id.breakpoints() == std::vector<int>{0, 1, 2, 3, 4, 5});
  const auto rev = overlap_breakpoints(PathPerm({3, 2, 1}, 3));
  CHECK(rev.k() == 0);
  CHECK(rev.blocks() == std::vector<int>{4});
  const auto mid = overlap_breakpoints(PathPerm({2, 1, 3}, 3));
  CHECK(mid.k() == 1);
  CHECK(mid.breakpoints() == std::vector<int>{0, 3, 4});
}

TEST_CASE("tables match the frozen oracle") {
  for (int n = 1; n <= 7; ++n) {
    CAPTURE(n);
    CHECK(overlap_table_dp(n).f == kOracleF[n - 1]);
    CHECK(overlap_table_bruteforce(n) == overlap_table_dp(n));
  }
  const auto t3 = overlap_table_dp(3);
  CHECK(t3.F == big({6, 3, 1, 1}));
}

TEST_CASE("table sums and the missing k = n-1 term") {
  for (int n = 2; n <= 30; ++n) {
    const auto t = overlap_table_dp(n);
    CHECK(std::accumulate(t.f.begin(), t.f.end(), BigInt(0)) == factorial(n));
    CHECK(t.f[n - 1] == 0);
    CHECK(t.f[n] == 1);
    CHECK(t.F[0] == factorial(n));
  }
  CHECK_THROWS_AS(overlap_table_bruteforce(9), CapacityError);
  CHECK_THROWS_AS(overlap_table_dp(61), CapacityError);
  CHECK_THROWS_AS(overlap_table_dp(0), InvalidInput);
}

TEST_CASE("block count recursion") {
  const auto a = block_counts(20);
  for (int m = 0; m <= 20; ++m) {
    BigInt rhs = a[m];
    for (int t = 1; t <= m; ++t) rhs += a[t - 1] * factorial(m - t);
    CHECK(rhs == factorial(m));
  }
}

TEST_CASE("large-k bound dominates F") {
  for (int n = 1; n <= 30; ++n) {
    const auto t = overlap_table_dp(n);
    for (int k = 0; k <= n; ++k) {
      if (k < large_k_threshold(n)) {
        CHECK_THROWS_AS(bound_large_k(n, k), RangeError);
        continue;
      }
      const double logF = std::log(t.F[k].convert_to<double>());
      CHECK(logF <= bound_large_k(n, k) + 1e-12 * std::max(1.0, std::abs(logF)));
    }
  }
  CHECK(bound_large_k(9, 8) == doctest::Approx(3.308865866289083).epsilon(1e-12));
}

TEST_CASE("small-k leading term is asymptotic only") {
  const auto lt = bound_small_k(10, 2);
  CHECK(lt.asymptotic_only);
  CHECK(lt.log_value == doctest::Approx(11.70321519141336).epsilon(1e-12));
}

TEST_CASE("middle-k range") {
  CHECK(bound_middle_k(100, 10).vacuous);
  CHECK(bound_middle_k(20, 3).vacuous);
  const long long n = 3000;
  const double upper = n - middle_k_margin(n);
  REQUIRE(upper > 1);
  const auto b = bound_middle_k(n, 10);
  CHECK_FALSE(b.vacuous);
  CHECK(b.log_f_bound == doctest::Approx(6 * std::log(3000.0) + std::lgamma(2991.0)));
  CHECK_THROWS_AS(bound_middle_k(n, n - 1), RangeError);
}

TEST_CASE("g weights bound the sequence counts") {
  const int n = 6;
  std::map<std::vector<int>, long> counts;
  for (const auto& p : all_perms({1, 2, 3, 4, 5, 6}, n)) ++counts[overlap_breakpoints(p).breakpoints()];
  for (const auto& [r, c] : counts) {
    const OverlapSeq seq(r, n);
    CHECK(BigInt(c) <= g1_weight(seq));
    CHECK(g1_weight(seq) <= g_weight(seq));
  }
}

TEST_CASE("factorial facts") {
  const auto f = factorial_facts_check(3, 3, 0);
  REQUIRE(f.log_convex.has_value());
  CHECK(*f.log_convex);
  CHECK_FALSE(f.ratio_chain.has_value());
  for (int a = 1; a <= 12; ++a) {
    for (int b = 0; b <= a; ++b) {
      for (int j = 0; j <= b; ++j) {
        const auto r = factorial_facts_check(a, b, j);
        if (r.log_convex) CHECK(*r.log_convex);
        if (r.shifted_product) CHECK(*r.shifted_product);
        if (r.ratio_chain) CHECK(*r.ratio_chain);
      }
    }
  }
  CHECK_THROWS_AS(factorial_facts_check(0, 1, 3), RangeError);
}

TEST_CASE("shared edges") {
  const PathPerm a({1, 2, 3}, 3);
  CHECK(shared_edge_count(a, 0, a, 0) == 3);
  CHECK(shared_edge_count(a, 0, PathPerm({3, 2, 1}, 3), 0) == 0);
  CHECK(shared_edge_count(a, 0, PathPerm({1, 3, 2}, 3), 0) == 1);
}

TEST_CASE("supplement bijection examples") {
  const int N = 4;
  const SupplementConfig cfg{2, 1, Vertex::from_labels({1}, N), Vertex::from_labels({2}, N),
                             Vertex::from_labels({1, 2, 3}, N), Vertex::from_labels({1, 2, 4}, N)};
  cfg.validate();
  CHECK(supplement_bijection(cfg, PathPerm({2, 3}, N)).labels() == std::vector<int>{1, 4});
  CHECK(supplement_bijection(cfg, PathPerm({3, 2}, N)).labels() == std::vector<int>{4, 1});
  const PathPerm gamma = cfg.reference();
  CHECK(shared_edge_count(PathPerm({2, 3}, N), 1, gamma, 1) == 2);
  CHECK(shared_edge_count(PathPerm({1, 4}, N), 2, gamma, 1) == 0);

  SupplementConfig bad = cfg;
  bad.x2 = cfg.x1;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
}

TEST_CASE("supplement bijection is the identity when the middle labels are shared") {
  const int N = 5;
  const SupplementConfig cfg{3, 1, Vertex::from_labels({1}, N), Vertex::from_labels({5}, N),
                             Vertex::from_labels({1, 2, 3, 4}, N), Vertex::from_labels({2, 3, 4, 5}, N)};
  for (const auto& p : all_perms({2, 3, 4}, N)) CHECK(supplement_bijection(cfg, p) == p);
}

TEST_CASE("f1 exact") {
  const int N = 5;
  const SupplementConfig cfg{3, 1, Vertex::from_labels({1}, N), Vertex::from_labels({2}, N),
                             Vertex::from_labels({1, 2, 3, 4}, N), Vertex::from_labels({1, 2, 3, 5}, N)};
  CHECK(f1_exact(cfg, 0) == 6);
  CHECK(f1_exact(cfg, 4) == 0);
  CHECK(f1_exact(cfg, 1) <= overlap_table_dp(3).F[1]);
}

}
