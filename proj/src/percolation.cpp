#include "cubeperc/percolation.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "cubeperc/errors.hpp"
#include "cubeperc/parallel.hpp"

namespace cubeperc {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw RangeError("edge probability must lie in [0, 1]");
}

class VisitedSet {
 public:
  explicit VisitedSet(int n) : words_((std::size_t{1} << n) / 64 + 1, 0) {}
  bool test_and_set(Mask v) {
    std::uint64_t& w = words_[v >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (v & 63U);
    const bool was = (w & bit) != 0;
    w |= bit;
    return was;
  }

 private:
  std::vector<std::uint64_t> words_;
};

}  // namespace

OpenEdgeSet::OpenEdgeSet(int n, bool oriented) : n_(n), oriented_(oriented) {
  check_dimension(n);
  if (n > kMaxMaterializedN) {
    throw CapacityError("materialised configurations limited to n <= " + std::to_string(kMaxMaterializedN));
  }
  open_up_.assign(std::size_t{1} << n, 0);
}

void OpenEdgeSet::set_open(Mask lower, int bit, bool open) {
  if (lower >> bit & 1U) throw InvalidInput("edge coordinate already in lower vertex");
  if (open) {
    open_up_[lower] |= Mask{1} << bit;
  } else {
    open_up_[lower] &= ~(Mask{1} << bit);
  }
}

std::uint64_t OpenEdgeSet::open_count() const noexcept {
  std::uint64_t total = 0;
  for (Mask m : open_up_) total += static_cast<std::uint64_t>(std::popcount(m));
  return total;
}

bool edge_open(const Stream& field, std::uint64_t edge, double p) noexcept {
  return field.uniform_at(edge) <= p;
}

OpenEdgeSet sample_open_edges(int n, double p, const Stream& field, bool oriented) {
  check_probability(p);
  OpenEdgeSet cfg(n, oriented);
  const Mask top = full_mask(n);
  for (Mask v = 0;; ++v) {
    for (int b = 0; b < n; ++b) {
      if (!(v >> b & 1U) && edge_open(field, edge_index(v, b, n), p)) cfg.set_open(v, b);
    }
    if (v == top) break;
  }
  return cfg;
}

bool oriented_connected(const OpenEdgeSet& cfg) {
  const int n = cfg.dimension();
  const Mask top = full_mask(n);
  std::vector<char> reached(std::size_t{1} << n, 0);
  reached[0] = 1;
  // Numeric order lists every vertex after all of its subsets.
  for (Mask v = 0; v < top; ++v) {
    if (!reached[v]) continue;
    for (Mask open = cfg.open_up(v); open; open &= open - 1) {
      reached[v | (open & (~open + 1))] = 1;
    }
  }
  return reached[top] != 0;
}

bool unoriented_connected(const OpenEdgeSet& cfg) {
  const int n = cfg.dimension();
  const Mask top = full_mask(n);
  VisitedSet seen(n);
  std::vector<Mask> queue{0};
  seen.test_and_set(0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Mask v = queue[head];
    if (v == top) return true;
    for (int b = 0; b < n; ++b) {
      const Mask bit = Mask{1} << b;
      const Mask lower = v & ~bit;
      if (cfg.is_open(lower, b) && !seen.test_and_set(v ^ bit)) queue.push_back(v ^ bit);
    }
  }
  return false;
}

bool oriented_connected_lazy(int n, double p, const Stream& field) {
  check_dimension(n);
  check_probability(p);
  if (n > kMaxLazyN) throw CapacityError("lazy scans limited to n <= " + std::to_string(kMaxLazyN));
  const Mask top = full_mask(n);
  VisitedSet seen(n);
  std::vector<Mask> queue{0};
  seen.test_and_set(0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Mask v = queue[head];
    if (v == top) return true;
    for (int b = 0; b < n; ++b) {
      if (v >> b & 1U) continue;
      const Mask w = v | (Mask{1} << b);
      if (edge_open(field, edge_index(v, b, n), p) && !seen.test_and_set(w)) queue.push_back(w);
    }
  }
  return false;
}

bool unoriented_connected_lazy(int n, double p, const Stream& field) {
  check_dimension(n);
  check_probability(p);
  if (n > kMaxLazyN) throw CapacityError("lazy scans limited to n <= " + std::to_string(kMaxLazyN));
  const Mask top = full_mask(n);
  VisitedSet seen(n);
  std::vector<Mask> queue{0};
  seen.test_and_set(0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Mask v = queue[head];
    if (v == top) return true;
    for (int b = 0; b < n; ++b) {
      const Mask bit = Mask{1} << b;
      if (edge_open(field, edge_index(v & ~bit, b, n), p) && !seen.test_and_set(v ^ bit)) {
        queue.push_back(v ^ bit);
      }
    }
  }
  return false;
}

double exact_connection_probability(int n, double p, bool oriented) {
  check_dimension(n);
  check_probability(p);
  if (n > 3) throw CapacityError("exact enumeration limited to n <= 3");
  std::vector<std::pair<Mask, int>> edges;
  for (Mask v = 0; v <= full_mask(n); ++v) {
    for (int b = 0; b < n; ++b) {
      if (!(v >> b & 1U)) edges.emplace_back(v, b);
    }
  }
  const std::size_t m = edges.size();
  double total = 0.0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    OpenEdgeSet cfg(n, oriented);
    for (std::size_t e = 0; e < m; ++e) {
      if (bits >> e & 1U) cfg.set_open(edges[e].first, edges[e].second);
    }
    const bool hit = oriented ? oriented_connected(cfg) : unoriented_connected(cfg);
    if (!hit) continue;
    const int open = std::popcount(bits);
    total += std::pow(p, open) * std::pow(1.0 - p, static_cast<int>(m) - open);
  }
  return total;
}

BigInt count_open_paths(const OpenEdgeSet& cfg) {
  const int n = cfg.dimension();
  if (n > 20) throw CapacityError("count_open_paths limited to n <= 20");
  const Mask top = full_mask(n);
  std::vector<std::uint64_t> paths(std::size_t{1} << n, 0);
  paths[0] = 1;
  for (Mask v = 0; v < top; ++v) {
    if (!paths[v]) continue;
    for (Mask open = cfg.open_up(v); open; open &= open - 1) {
      paths[v | (open & (~open + 1))] += paths[v];
    }
  }
  return BigInt(paths[top]);
}

McEstimate mc_connection_probability(int n, double c, std::uint64_t reps, bool oriented, std::uint64_t seed,
                                     int jobs) {
  check_dimension(n);
  if (reps == 0) throw InvalidInput("reps must be at least 1");
  const double p = c / n;
  if (!(p >= 0.0 && p <= 1.0)) throw RangeError("p = c/n must lie in [0, 1]");
  const auto hits = replicate_map(reps, jobs, [&](std::uint64_t i) -> char {
    const Stream field = Stream::derive(seed, i);
    return oriented ? oriented_connected_lazy(n, p, field) : unoriented_connected_lazy(n, p, field);
  });
  std::uint64_t successes = 0;
  for (char h : hits) successes += static_cast<std::uint64_t>(h);
  return McEstimate::from_counts(successes, reps, seed,
                                 {{"n", n}, {"c", c}, {"p", p}, {"oriented", oriented ? 1.0 : 0.0}});
}

}  // namespace cubeperc
