#include <doctest.h>

#include <algorithm>
#include <set>

#include "cubeperc/cube.hpp"
#include "cubeperc/errors.hpp"
#include "cubeperc/rng.hpp"

using namespace cubeperc;

TEST_SUITE("cube") {

TEST_CASE("vertex basics") {
  const Vertex v = Vertex::from_labels({1, 3}, 4);
  CHECK(v.bits() == 0b0101);
  CHECK(v.level() == 2);
  CHECK(v.contains(3));
  CHECK_FALSE(v.contains(2));
  CHECK(v.labels() == std::vector<int>{1, 3});
  CHECK(v.complement() == Vertex::from_labels({2, 4}, 4));
  CHECK(Vertex::top(4).level() == 4);
  CHECK(Vertex::bottom(4).level() == 0);
  CHECK_THROWS_AS(Vertex(0b10000, 4), InvalidInput);
  CHECK_THROWS_AS(Vertex::from_labels({5}, 4), InvalidInput);
  CHECK_THROWS_AS(check_dimension(31), InvalidInput);
  CHECK_THROWS_AS(check_dimension(0), InvalidInput);
}

TEST_CASE("neighbours are at Hamming distance one") {
  for (int n = 1; n <= 6; ++n) {
    for (Mask m = 0; m <= full_mask(n); ++m) {
      const Vertex v(m, n);
      const auto nb = v.neighbors();
      REQUIRE(static_cast<int>(nb.size()) == n);
      for (const Vertex& w : nb) CHECK(popcount(w.bits() ^ m) == 1);
      const auto up = v.upper_neighbors();
      CHECK(static_cast<int>(up.size()) == n - v.level());
      for (const Vertex& w : up) CHECK(w.level() == v.level() + 1);
    }
  }
}

TEST_CASE("edge indices are dense and distinct") {
  const int n = 5;
  std::set<std::uint64_t> seen;
  for (Mask m = 0; m <= full_mask(n); ++m) {
    for (int c = 1; c <= n; ++c) {
      if (m & coord_bit(c)) continue;
      const EdgeId e(Vertex(m, n), c);
      CHECK(e.index() == edge_index(m, c - 1, n));
      CHECK(e.upper().level() == e.lower.level() + 1);
      seen.insert(e.index());
    }
  }
  CHECK(seen.size() == edge_count(n));
  CHECK(*seen.rbegin() < (std::uint64_t{1} << n) * n);
  CHECK_THROWS_AS(EdgeId(Vertex::from_labels({2}, 3), 2), InvalidInput);
}

TEST_CASE("paths") {
  const PathPerm p({2, 3, 1}, 3);
  const auto vs = path_vertices(p, Vertex::bottom(3));
  REQUIRE(vs.size() == 4);
  CHECK(vs[1] == Vertex::from_labels({2}, 3));
  CHECK(vs[3] == Vertex::top(3));
  CHECK(p.support() == 0b111);
  CHECK(PathPerm::identity(3).labels() == std::vector<int>{1, 2, 3});
  CHECK_THROWS_AS(PathPerm({1, 1}, 3), InvalidInput);
  CHECK_THROWS_AS(PathPerm({4}, 3), InvalidInput);
  CHECK_THROWS_AS(path_vertices(PathPerm({1}, 3), Vertex::from_labels({1}, 3)), InvalidInput);
}

TEST_CASE("counter streams are addressable and reproducible") {
  const Stream a = Stream::derive(7, 3);
  const Stream b = Stream::derive(7, 3);
  const Stream c = Stream::derive(7, 4);
  CHECK(a.at(10) == b.at(10));
  CHECK(a.at(10) != c.at(10));
  Stream s = a;
  CHECK(s.next() == a.at(0));
  CHECK(s.next() == a.at(1));
  double lo = 1.0;
  double hi = 0.0;
  double sum = 0.0;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const double u = a.uniform_at(i);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo > 0.0);
  CHECK(hi <= 1.0);
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
  Stream d = Stream::derive(1, 1);
  for (int i = 0; i < 1000; ++i) CHECK(d.below(6) < 6);
}

}
