#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cubeperc/errors.hpp"
#include "cubeperc/fpp.hpp"
#include "cubeperc/stats.hpp"

using namespace cubeperc;

namespace {

// Minimum over all n! monotone paths, the definition itself.
double brute_oriented(const WeightAssignment& w) {
  const int n = w.dimension();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    Mask v = 0;
    double sum = 0.0;
    for (int b : perm) {
      sum += w.weight(v, b);
      v |= Mask{1} << b;
    }
    best = std::min(best, sum);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_SUITE("fpp") {

TEST_CASE("constant weights") {
  for (int n = 1; n <= 10; ++n) {
    CHECK(oriented_fpp_time(WeightAssignment::constant(n, true, 1.0)) == doctest::Approx(n));
    const auto T = unoriented_infection_times(WeightAssignment::constant(n, false, 0.5));
    for (Mask m = 0; m <= full_mask(n); ++m) CHECK(T.at(m) == doctest::Approx(0.5 * popcount(m)));
    CHECK(cover_time(T) == doctest::Approx(0.5 * n));
  }
}

TEST_CASE("oriented DP equals path enumeration") {
  for (int n = 1; n <= 7; ++n) {
    for (std::uint64_t i = 0; i < 20; ++i) {
      const auto w = WeightAssignment::exponential(n, true, Stream::derive(21, i));
      CHECK(oriented_fpp_time(w) == doctest::Approx(brute_oriented(w)).epsilon(1e-12));
    }
  }
}

TEST_CASE("lazy weights are stable and shared between orientations") {
  const auto w = WeightAssignment::exponential(6, true, Stream::derive(4, 2));
  const auto u = w.as_oriented(false);
  const auto t = w.materialize();
  for (Mask m = 0; m < 64; ++m) {
    for (int b = 0; b < 6; ++b) {
      if (m >> b & 1U) continue;
      CHECK(w.weight(m, b) == u.weight(m, b));
      CHECK(w.weight(m, b) == t.weight(m, b));
      CHECK(w.weight(m, b) > 0.0);
    }
  }
}

TEST_CASE("dijkstra solves the shortest-path equations") {
  for (int n = 2; n <= 9; ++n) {
    const auto w = WeightAssignment::exponential(n, false, Stream::derive(8, n));
    const auto T = unoriented_infection_times(w);
    CHECK(T.at(0) == 0.0);
    CHECK(bellman_residual(T, w) < 1e-12);
    CHECK(T.complete());
    CHECK(T.top() <= oriented_fpp_time(w.as_oriented(true)) + 1e-12);
  }
}

TEST_CASE("non-exponential weights through a quantile function") {
  // Uniform(0, 2) has density 1/2 at the origin; use it only as a generic law.
  const auto w = WeightAssignment::from_inverse_cdf(5, true, Stream::derive(1, 1),
                                                    [](double q) { return 2.0 * q; }, "uniform02");
  CHECK(w.distribution() == "uniform02");
  CHECK(oriented_fpp_time(w) == doctest::Approx(brute_oriented(w)));
  CHECK(oriented_fpp_time(w) <= 10.0);
}

TEST_CASE("richardson run is a valid infection history") {
  const int n = 6;
  const auto T = richardson_simulate(n, Stream::derive(3, 0));
  CHECK(T.at(0) == 0.0);
  CHECK(T.complete());
  for (Mask v = 1; v <= full_mask(n); ++v) {
    // Every infected vertex has an earlier infected neighbour.
    double earliest = std::numeric_limits<double>::infinity();
    for (int b = 0; b < n; ++b) earliest = std::min(earliest, T.at(v ^ (Mask{1} << b)));
    CHECK(earliest < T.at(v));
  }
  const auto cut = richardson_simulate(n, Stream::derive(3, 0), 0.3);
  for (Mask v = 0; v <= full_mask(n); ++v) {
    if (std::isfinite(cut.at(v))) CHECK(cut.at(v) <= 0.3);
  }
  CHECK(cut.infected_by(0.3).size() <= (std::size_t{1} << n));
  if (!cut.complete()) CHECK_THROWS_AS(cover_time(cut), IncompleteCoverage);
}

TEST_CASE("richardson top time matches first passage in law") {
  const int n = 4;
  std::vector<double> rich(1500);
  std::vector<double> fpp(1500);
  for (std::uint64_t i = 0; i < rich.size(); ++i) {
    rich[i] = richardson_simulate(n, Stream::derive(100, i)).top();
    fpp[i] = unoriented_infection_times(WeightAssignment::exponential(n, false, Stream::derive(200, i))).top();
  }
  CHECK(ks_two_sample(rich, fpp).p_value > 0.001);
}

TEST_CASE("duality replicates are reproducible") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto a = duality_replicate(4, 1.0, 0.4, 9, i);
    const auto b = duality_replicate(4, 1.0, 0.4, 9, i);
    CHECK(a.forward == b.forward);
    CHECK(a.meet == b.meet);
  }
  CHECK_THROWS_AS(duality_experiment(4, 1.0, 1.5, 10, 0), RangeError);
  const auto r = duality_experiment(4, 1.0, 0.5, 2000, 1, 2);
  CHECK(r.z < 4.0);
}

TEST_CASE("first moment bound") {
  CHECK(ofpp_first_moment_bound(20, 0.2, 0.0) == doctest::Approx(0.011984969094217942).epsilon(1e-10));
}

TEST_CASE("ecdf excess") {
  const std::vector<double> a{1.0, 2.0, 3.0};
  const std::vector<double> b{0.5, 1.5, 2.5};
  CHECK(ecdf_excess(a, a) == 0.0);
  CHECK(ecdf_excess(a, b) == doctest::Approx(1.0 / 3.0));
  CHECK(ecdf_excess(b, a) == 0.0);
}

TEST_CASE("conjecture report shape") {
  const auto rep = conjecture_monotonicity_test(3, 400, 5, 1);
  CHECK(rep.rows.size() == 4);
  CHECK(rep.cdf_threshold > 0.0);
  CHECK_THROWS_AS(conjecture_monotonicity_test(15, 10, 0), RangeError);
}

}
