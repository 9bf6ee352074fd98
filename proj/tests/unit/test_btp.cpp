#include <doctest.h>

#include <cmath>
#include <numeric>

#include "cubeperc/analytic.hpp"
#include "cubeperc/btp.hpp"
#include "cubeperc/errors.hpp"

using namespace cubeperc;

TEST_SUITE("btp") {

TEST_CASE("population bookkeeping") {
  const auto pop = btp_simulate(4, 0.8, kDefaultParticleCap, Stream::derive(1, 0));
  CHECK(pop.status == BtpStatus::ok);
  CHECK(pop.counts.size() == 16);
  CHECK(std::accumulate(pop.counts.begin(), pop.counts.end(), std::uint64_t{0}) == pop.total);
  CHECK(pop.total >= 1);
  const auto zero = btp_simulate(4, 0.0, kDefaultParticleCap, Stream::derive(1, 0));
  CHECK(zero.total == 1);
  CHECK(zero.at(0) == 1);
}

TEST_CASE("cap triggers overflow") {
  const auto pop = btp_simulate(6, 5.0, 100, Stream::derive(2, 0));
  CHECK(pop.status == BtpStatus::overflow);
  CHECK(pop.total <= 100);
  CHECK(pop.time < 5.0);
  CHECK_THROWS_AS(btp_simulate(25, 1.0, 100, Stream::derive(2, 0)), CapacityError);
}

TEST_CASE("total population has mean e^{nt}") {
  const int n = 3;
  const double t = 0.4;
  double sum = 0.0;
  const int runs = 20000;
  for (int i = 0; i < runs; ++i) sum += static_cast<double>(btp_simulate(n, t, kDefaultParticleCap, Stream::derive(3, i)).total);
  // Yule process: Var = e^{2nt} - e^{nt}.
  const double mean = std::exp(n * t);
  const double sd = std::sqrt((mean * mean - mean) / runs);
  CHECK(std::abs(sum / runs - mean) < 4 * sd);
}

TEST_CASE("first hit") {
  const auto h = btp_first_hit(3, full_mask(3), kDefaultParticleCap, Stream::derive(4, 0));
  CHECK_FALSE(h.censored);
  CHECK(h.time > 0.0);
  const auto at_start = btp_first_hit(3, 0, kDefaultParticleCap, Stream::derive(4, 0));
  CHECK(at_start.time == 0.0);
  const auto capped = btp_first_hit(12, full_mask(12), 50, Stream::derive(4, 1));
  if (capped.censored) CHECK(capped.time > 0.0);
}

}
