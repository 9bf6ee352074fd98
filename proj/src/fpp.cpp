#include "cubeperc/fpp.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "cubeperc/analytic.hpp"
#include "cubeperc/errors.hpp"
#include "cubeperc/parallel.hpp"

namespace cubeperc {

WeightAssignment::WeightAssignment(int n, bool oriented, Source src, std::string tag)
    : n_(n), oriented_(oriented), source_(src), tag_(std::move(tag)) {
  check_dimension(n);
}

WeightAssignment WeightAssignment::exponential(int n, bool oriented, Stream field) {
  WeightAssignment w(n, oriented, Source::exponential, "exponential(1)");
  w.field_ = field;
  w.k4_ = 1.0;
  return w;
}

WeightAssignment WeightAssignment::from_inverse_cdf(int n, bool oriented, Stream field, InverseCdf inv,
                                                    std::string tag, std::optional<double> k4) {
  if (!inv) throw InvalidInput("quantile function required");
  WeightAssignment w(n, oriented, Source::quantile, std::move(tag));
  w.field_ = field;
  w.inv_ = std::move(inv);
  w.k4_ = k4;
  return w;
}

WeightAssignment WeightAssignment::constant(int n, bool oriented, double value) {
  if (!(value > 0.0)) throw InvalidInput("passage times must be positive");
  WeightAssignment w(n, oriented, Source::constant, "constant");
  w.constant_ = value;
  return w;
}

WeightAssignment WeightAssignment::table(int n, bool oriented, std::vector<double> weights) {
  check_dimension(n);
  if (n > kMaxUnorientedFppN) throw CapacityError("weight tables limited to n <= 22");
  if (weights.size() != (std::size_t{1} << n) * static_cast<std::size_t>(n)) {
    throw InvalidInput("weight table must have n * 2^n entries");
  }
  WeightAssignment w(n, oriented, Source::table, "table");
  w.table_ = std::move(weights);
  return w;
}

double WeightAssignment::weight(Mask lower, int bit) const {
  const std::uint64_t e = edge_index(lower, bit, n_);
  switch (source_) {
    case Source::exponential:
      return -std::log(field_.uniform_at(e));
    case Source::quantile:
      return inv_(1.0 - field_.uniform_at(e));
    case Source::constant:
      return constant_;
    case Source::table:
      return table_[e];
  }
  return constant_;
}

WeightAssignment WeightAssignment::as_oriented(bool oriented) const {
  WeightAssignment copy = *this;
  copy.oriented_ = oriented;
  return copy;
}

WeightAssignment WeightAssignment::materialize() const {
  if (n_ > kMaxUnorientedFppN) throw CapacityError("weight tables limited to n <= 22");
  std::vector<double> values((std::size_t{1} << n_) * static_cast<std::size_t>(n_), 0.0);
  for (Mask v = 0; v <= full_mask(n_); ++v) {
    for (int b = 0; b < n_; ++b) {
      if (!(v >> b & 1U)) values[edge_index(v, b, n_)] = weight(v, b);
    }
  }
  WeightAssignment w = table(n_, oriented_, std::move(values));
  w.tag_ = tag_;
  w.k4_ = k4_;
  return w;
}

void WeightAssignment::set(Mask lower, int bit, double value) {
  if (source_ != Source::table) throw InvalidInput("only weight tables can be modified");
  if (!(value > 0.0)) throw InvalidInput("passage times must be positive");
  if (lower >> bit & 1U) throw InvalidInput("edge coordinate already in lower vertex");
  table_[edge_index(lower, bit, n_)] = value;
}

std::vector<Mask> InfectionTimes::infected_by(double t) const {
  std::vector<Mask> out;
  for (Mask v = 0; v < T.size(); ++v) {
    if (T[v] <= t) out.push_back(v);
  }
  return out;
}

bool InfectionTimes::complete() const {
  return std::none_of(T.begin(), T.end(), [](double x) { return std::isinf(x); });
}

double oriented_fpp_time(const WeightAssignment& weights) {
  const int n = weights.dimension();
  if (n > kMaxOrientedFppN) {
    throw CapacityError("oriented first-passage limited to n <= " + std::to_string(kMaxOrientedFppN));
  }
  const Mask top = full_mask(n);
  std::vector<double> best(std::size_t{1} << n, kNeverInfected);
  best[0] = 0.0;
  // Push relaxation in numeric order: each vertex is final before it is
  // expanded because all its lower neighbours are numerically smaller.
  for (Mask v = 0; v < top; ++v) {
    const double here = best[v];
    for (int b = 0; b < n; ++b) {
      if (v >> b & 1U) continue;
      const Mask w = v | (Mask{1} << b);
      const double cand = here + weights.weight(v, b);
      if (cand < best[w]) best[w] = cand;
    }
  }
  return best[top];
}

InfectionTimes unoriented_infection_times(const WeightAssignment& weights, Mask source) {
  const int n = weights.dimension();
  if (n > kMaxUnorientedFppN) {
    throw CapacityError("unoriented first-passage limited to n <= " + std::to_string(kMaxUnorientedFppN));
  }
  if (source > full_mask(n)) throw InvalidInput("source outside the cube");
  InfectionTimes out{n, source, std::vector<double>(std::size_t{1} << n, kNeverInfected)};
  std::vector<char> done(out.T.size(), 0);
  using Entry = std::pair<double, Mask>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  out.T[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = 1;
    for (int b = 0; b < n; ++b) {
      const Mask bit = Mask{1} << b;
      const Mask w = v ^ bit;
      if (done[w]) continue;
      const double cand = d + weights.weight(v & ~bit, b);
      if (cand < out.T[w]) {
        out.T[w] = cand;
        heap.emplace(cand, w);
      }
    }
  }
  return out;
}

namespace {

/// Fenwick tree over vertex rates with O(log N) sampling by prefix sum.
class RateTree {
 public:
  explicit RateTree(std::size_t size) : tree_(size + 1, 0) {
    top_bit_ = 1;
    while (top_bit_ * 2 <= size) top_bit_ *= 2;
  }
  void add(std::size_t i, std::int64_t delta) {
    total_ += delta;
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }
  std::int64_t total() const noexcept { return total_; }
  /// Smallest index whose inclusive prefix sum exceeds r, 0 <= r < total.
  std::size_t find(std::int64_t r) const {
    std::size_t pos = 0;
    for (std::size_t step = top_bit_; step; step >>= 1) {
      if (pos + step < tree_.size() && tree_[pos + step] <= r) {
        pos += step;
        r -= tree_[pos];
      }
    }
    return pos;
  }

 private:
  std::vector<std::int64_t> tree_;
  std::size_t top_bit_;
  std::int64_t total_ = 0;
};

}  // namespace

InfectionTimes richardson_simulate(int n, Stream stream, double horizon, Mask source) {
  check_dimension(n);
  if (n > kMaxUnorientedFppN) {
    throw CapacityError("Richardson simulation limited to n <= " + std::to_string(kMaxUnorientedFppN));
  }
  if (source > full_mask(n)) throw InvalidInput("source outside the cube");
  if (!(horizon >= 0.0)) throw RangeError("horizon must be nonnegative");
  const std::size_t size = std::size_t{1} << n;
  InfectionTimes out{n, source, std::vector<double>(size, kNeverInfected)};
  RateTree rates(size);
  std::vector<std::int32_t> infected_neighbours(size, 0);

  auto infect = [&](Mask v, double t) {
    out.T[v] = t;
    rates.add(v, -infected_neighbours[v]);
    for (int b = 0; b < n; ++b) {
      const Mask w = v ^ (Mask{1} << b);
      ++infected_neighbours[w];
      if (std::isinf(out.T[w])) rates.add(w, 1);
    }
  };

  double t = 0.0;
  infect(source, 0.0);
  while (rates.total() > 0) {
    t += stream.exponential(static_cast<double>(rates.total()));
    if (t > horizon) break;
    const auto pick = static_cast<std::int64_t>(stream.below(static_cast<std::uint64_t>(rates.total())));
    infect(static_cast<Mask>(rates.find(pick)), t);
  }
  return out;
}

double cover_time(const InfectionTimes& times) {
  double worst = 0.0;
  for (double x : times.T) {
    if (std::isinf(x)) throw IncompleteCoverage("some vertex was never infected");
    worst = std::max(worst, x);
  }
  return worst;
}

double bellman_residual(const InfectionTimes& times, const WeightAssignment& weights) {
  const int n = times.n;
  double worst = 0.0;
  for (Mask v = 0; v < times.T.size(); ++v) {
    if (v == times.source) {
      worst = std::max(worst, std::abs(times.T[v]));
      continue;
    }
    double best = kNeverInfected;
    for (int b = 0; b < n; ++b) {
      const Mask bit = Mask{1} << b;
      best = std::min(best, times.T[v ^ bit] + weights.weight(v & ~bit, b));
    }
    worst = std::max(worst, std::abs(times.T[v] - best));
  }
  return worst;
}

DualityOutcome duality_replicate(int n, double t, double s, std::uint64_t seed, std::uint64_t i) {
  const Mask top = full_mask(n);
  const InfectionTimes single = richardson_simulate(n, Stream::derive(seed, i, 1), t);
  const Stream pair_stream = Stream::derive(seed, i, 2);
  const InfectionTimes from_bottom = richardson_simulate(n, pair_stream.split(0), s);
  const InfectionTimes from_top = richardson_simulate(n, pair_stream.split(1), t - s, top);
  bool meet = false;
  for (Mask v = 0; v <= top && !meet; ++v) {
    meet = from_bottom.T[v] <= s && from_top.T[v] <= t - s;
  }
  return {single.top() <= t, meet};
}

DualityResult duality_experiment(int n, double t, double s, std::uint64_t reps, std::uint64_t seed, int jobs) {
  check_dimension(n);
  if (!(s >= 0.0 && s <= t)) throw RangeError("duality needs 0 <= s <= t");
  if (reps == 0) throw InvalidInput("reps must be at least 1");
  const auto outcomes =
      replicate_map(reps, jobs, [&](std::uint64_t i) { return duality_replicate(n, t, s, seed, i); });
  std::uint64_t fwd = 0;
  std::uint64_t meet = 0;
  for (const DualityOutcome& p : outcomes) {
    fwd += static_cast<std::uint64_t>(p.forward);
    meet += static_cast<std::uint64_t>(p.meet);
  }
  const std::map<std::string, double> params{{"n", n}, {"t", t}, {"s", s}};
  DualityResult out{McEstimate::from_counts(fwd, reps, seed, params),
                    McEstimate::from_counts(meet, reps, seed, params), 0.0};
  out.z = z_difference(out.forward, out.intersection);
  return out;
}

double ofpp_first_moment_bound(int n, double eps, double K4) {
  if (n < 1) throw RangeError("n must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw RangeError("eps must lie in (0, 1)");
  if (!(K4 >= 0.0)) throw RangeError("K4 must be nonnegative");
  const double u = 1.0 - eps;
  const double tail = erlang_tail(n, u);
  if (tail == 0.0) return 0.0;
  return std::exp(std::lgamma(n + 1.0) + (1.0 + K4) * u + std::log(tail));
}

double ecdf_excess(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidInput("ecdf_excess needs nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double gap = 0.0;
  while (i < x.size() || j < y.size()) {
    double v;
    if (i == x.size()) {
      v = y[j];
    } else if (j == y.size()) {
      v = x[i];
    } else {
      v = std::min(x[i], y[j]);
    }
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    gap = std::max(gap, static_cast<double>(j) / nb - static_cast<double>(i) / na);
  }
  return gap;
}

ConjectureReport conjecture_monotonicity_test(int n, std::uint64_t reps, std::uint64_t seed, int jobs,
                                              double alpha) {
  if (n < 2 || n > 14) throw RangeError("conjecture test needs 2 <= n <= 14");
  if (reps == 0) throw InvalidInput("reps must be at least 1");
  const Mask base_count = Mask{1} << (n - 1);
  const Mask lift = base_count;  // the last coordinate is the {0,1} factor
  ConjectureReport report;
  report.n = n;
  report.reps = reps;
  report.alpha = alpha;
  report.cdf_threshold = 2.0 * dkw_epsilon(reps, alpha / (2.0 * base_count));

  // Bound the working set to about 2^25 stored times by re-running the
  // replicates for each chunk of base vertices; streams make the reruns
  // identical.
  const std::uint64_t max_store = std::uint64_t{1} << 25;
  const Mask chunk = static_cast<Mask>(std::clamp<std::uint64_t>(max_store / (2 * reps), 1, base_count));
  for (Mask first = 0; first < base_count; first += chunk) {
    const Mask last = std::min<Mask>(base_count, first + chunk);
    const auto samples = replicate_map(reps, jobs, [&](std::uint64_t i) {
      const auto times =
          unoriented_infection_times(WeightAssignment::exponential(n, false, Stream::derive(seed, i)));
      std::vector<double> row;
      row.reserve(2 * (last - first));
      for (Mask y = first; y < last; ++y) {
        row.push_back(times.T[y]);
        row.push_back(times.T[y | lift]);
      }
      return row;
    });
    for (Mask y = first; y < last; ++y) {
      std::vector<double> t0(reps);
      std::vector<double> t1(reps);
      for (std::uint64_t i = 0; i < reps; ++i) {
        t0[i] = samples[i][2 * (y - first)];
        t1[i] = samples[i][2 * (y - first) + 1];
      }
      ConjectureRow row;
      row.y = y;
      row.cdf_gap = ecdf_excess(t0, t1);
      const auto m0 = moments(t0);
      const auto m1 = moments(t1);
      std::vector<double> diff(reps);
      for (std::uint64_t i = 0; i < reps; ++i) diff[i] = t1[i] - t0[i];
      row.mean0 = m0.mean;
      row.mean1 = m1.mean;
      row.mean_diff_se = moments(diff).stderr_();
      row.cdf_flagged = row.cdf_gap > report.cdf_threshold;
      row.mean_flagged = row.mean1 < row.mean0 - 3.0 * row.mean_diff_se;
      report.any_flagged = report.any_flagged || row.cdf_flagged || row.mean_flagged;
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace cubeperc
