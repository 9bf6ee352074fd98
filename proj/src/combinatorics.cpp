#include "cubeperc/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cubeperc/errors.hpp"

namespace cubeperc {

BigInt factorial(int m) {
  if (m < 0) throw DomainError("factorial of a negative number");
  BigInt out = 1;
  for (int i = 2; i <= m; ++i) out *= i;
  return out;
}

OverlapSeq::OverlapSeq(std::vector<int> r, int n) : r_(std::move(r)), n_(n) {
  if (n < 1) throw InvalidInput("overlap sequence needs n >= 1");
  if (r_.size() < 2 || r_.front() != 0 || r_.back() != n + 1) {
    throw InvalidInput("overlap sequence must start at 0 and end at n+1");
  }
  for (std::size_t i = 1; i < r_.size(); ++i) {
    if (r_[i] <= r_[i - 1]) throw InvalidInput("overlap sequence must be strictly increasing");
  }
}

std::vector<int> OverlapSeq::blocks() const {
  std::vector<int> s;
  s.reserve(r_.size() - 1);
  for (std::size_t i = 0; i + 1 < r_.size(); ++i) s.push_back(r_[i + 1] - r_[i]);
  return s;
}

OverlapSeq overlap_breakpoints(const PathPerm& p) {
  const int n = p.dimension();
  if (static_cast<int>(p.size()) != n) {
    throw InvalidInput("overlap_breakpoints needs a permutation of {1..n}");
  }
  std::vector<int> r{0};
  int prefix_max = 0;
  for (int i = 1; i <= n; ++i) {
    // With distinct entries, pi(1..i-1) = {1..i-1} iff its maximum is i-1.
    if (prefix_max == i - 1 && p[i - 1] == i) r.push_back(i);
    prefix_max = std::max(prefix_max, p[i - 1]);
  }
  r.push_back(n + 1);
  return OverlapSeq(std::move(r), n);
}

OverlapTable OverlapTable::from_counts(int n, std::vector<BigInt> f) {
  OverlapTable t;
  t.n = n;
  t.F.assign(f.size(), 0);
  BigInt acc = 0;
  for (std::size_t k = f.size(); k-- > 0;) {
    acc += f[k];
    t.F[k] = acc;
  }
  t.f = std::move(f);
  return t;
}

OverlapTable overlap_table_bruteforce(int n) {
  if (n < 1) throw InvalidInput("n must be positive");
  if (n > kMaxBruteForceN) {
    throw CapacityError("brute-force overlap table limited to n <= " + std::to_string(kMaxBruteForceN));
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[i] = i + 1;
  std::vector<BigInt> f(static_cast<std::size_t>(n) + 1, 0);
  do {
    f[overlap_breakpoints(PathPerm(perm, n)).k()] += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return OverlapTable::from_counts(n, std::move(f));
}

std::vector<BigInt> block_counts(int m_max) {
  if (m_max < 0) throw InvalidInput("m_max must be nonnegative");
  std::vector<BigInt> fact(static_cast<std::size_t>(m_max) + 1, 1);
  for (int m = 1; m <= m_max; ++m) fact[m] = fact[m - 1] * m;
  // A permutation with a first breakpoint at t splits as a breakpoint-free
  // prefix of length t-1, the fixed point t, and an arbitrary suffix.
  std::vector<BigInt> a(static_cast<std::size_t>(m_max) + 1, 0);
  a[0] = 1;
  for (int m = 1; m <= m_max; ++m) {
    BigInt with_break = 0;
    for (int t = 1; t <= m; ++t) with_break += a[t - 1] * fact[m - t];
    a[m] = fact[m] - with_break;
  }
  return a;
}

OverlapTable overlap_table_dp(int n) {
  if (n < 1) throw InvalidInput("n must be positive");
  if (n > kMaxDpN) throw CapacityError("overlap table DP limited to n <= " + std::to_string(kMaxDpN));
  const int total = n + 1;
  const auto a = block_counts(n);
  // ways[t]: compositions of t into the current number of blocks, each
  // block of size s weighted by a(s-1).  Blocks of size 2 would need a(1),
  // which is zero, so they are skipped.
  std::vector<BigInt> ways(static_cast<std::size_t>(total) + 1, 0);
  ways[0] = 1;
  std::vector<BigInt> f(static_cast<std::size_t>(n) + 1, 0);
  for (int blocks = 1; blocks <= total; ++blocks) {
    std::vector<BigInt> next(ways.size(), 0);
    for (int t = 0; t < total; ++t) {
      if (ways[t] == 0) continue;
      for (int s = 1; t + s <= total; ++s) {
        if (s == 2) continue;
        next[t + s] += ways[t] * a[s - 1];
      }
    }
    ways = std::move(next);
    f[blocks - 1] = ways[total];
  }
  return OverlapTable::from_counts(n, std::move(f));
}

namespace {

void check_nk(long long n, long long k) {
  if (n < 1) throw RangeError("n must be positive");
  if (k < 0 || k > n) throw RangeError("k must lie in [0, n]");
}

double log_sum_exp(double a, double b) {
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

LeadingTerm bound_small_k(int n, int k) {
  check_nk(n, k);
  return {std::log(static_cast<double>(k) + 1.0) + std::lgamma(static_cast<double>(n - k) + 1.0), true};
}

double large_k_threshold(int n) { return n - std::pow(static_cast<double>(n), 0.75) / 2.0; }

double bound_large_k(int n, int k) {
  check_nk(n, k);
  if (static_cast<double>(k) < large_k_threshold(n)) {
    throw RangeError("large-k bound needs k >= n - n^{3/4}/2");
  }
  const double m = n - k;
  return std::log(m + 1.0) + m * (std::numbers::ln2 + 0.875 * std::log(static_cast<double>(n)));
}

double middle_k_margin(double n) { return 5.0 * std::numbers::e * std::pow(n + 3.0, 2.0 / 3.0); }

MiddleKBound bound_middle_k(long long n, long long k) {
  check_nk(n, k);
  MiddleKBound out;
  const double nd = static_cast<double>(n);
  const double margin = middle_k_margin(nd);
  if (n < 25 || nd - margin < 0.0) return out;
  if (static_cast<double>(k) > nd - margin) {
    throw RangeError("middle-k bound needs k <= n - 5e(n+3)^{2/3}");
  }
  out.vacuous = false;
  out.log_f_bound = 6.0 * std::log(nd) + std::lgamma(static_cast<double>(n - k) + 1.0);
  const double m = std::ceil(margin);
  if (m <= std::ceil(std::pow(nd, 0.75) / 2.0)) {
    const double tail = std::log(m) + (m - 1.0) * (std::numbers::ln2 + 0.875 * std::log(nd));
    out.log_F_bound = log_sum_exp(std::numbers::ln2 + out.log_f_bound, tail);
  }
  return out;
}

BigInt g_weight(const OverlapSeq& r) {
  BigInt g = 1;
  for (int s : r.blocks()) g *= factorial(s - 1);
  return g;
}

BigInt g1_weight(const OverlapSeq& r) {
  BigInt g = 1;
  for (int s : r.blocks()) g *= s == 1 ? BigInt(1) : factorial(s - 1) - 1;
  return g;
}

FactorialFacts factorial_facts_check(int a, int b, int j) {
  if (a < 0 || b < 0 || j < 0) throw RangeError("factorial facts need nonnegative arguments");
  FactorialFacts out;
  if (a >= b && b >= j) {
    out.log_convex = factorial(a) * factorial(b) <= factorial(a + j) * factorial(b - j);
  }
  if (a >= 4 || (a == 3 && j >= 1)) {
    out.shifted_product = (factorial(a) - 1) * (factorial(a + j) - 1) <=
                          (factorial(a - 1) - 1) * (factorial(a + j + 1) - 1);
  }
  if (a > b && b > 0) {
    const BigInt fa = factorial(a);
    const BigInt fb = factorial(b);
    // b = 1 makes the left ratio infinite.
    const bool first = fb == 1 || (fa - 1) * fb > fa * (fb - 1);
    long double log_ratio = 0.0L;
    for (int m = b + 1; m <= a; ++m) log_ratio += std::log(static_cast<long double>(m));
    const long double log_power = static_cast<long double>(a - b) * (std::log(static_cast<long double>(a)) - 1.0L);
    out.ratio_chain = first && log_ratio > log_power;
  }
  if (!out.log_convex && !out.shifted_product && !out.ratio_chain) {
    throw RangeError("(a, b, j) lies outside every factorial inequality's range");
  }
  return out;
}

std::vector<std::pair<Mask, int>> path_edges(const PathPerm& p, Mask start) {
  std::vector<std::pair<Mask, int>> out;
  out.reserve(p.size());
  Mask cur = start;
  for (int l : p.labels()) {
    out.emplace_back(cur, l - 1);
    cur |= coord_bit(l);
  }
  return out;
}

int shared_edge_count(const PathPerm& a, Mask start_a, const PathPerm& b, Mask start_b) {
  const auto ea = path_edges(a, start_a);
  const auto eb = path_edges(b, start_b);
  int shared = 0;
  for (const auto& e : ea) shared += static_cast<int>(std::count(eb.begin(), eb.end(), e));
  return shared;
}

void SupplementConfig::validate() const {
  if (n < 1 || L < 1) throw InvalidInput("supplement configuration needs n >= 1 and L >= 1");
  const int dim = n + 2 * L;
  for (const Vertex* v : {&x1, &x2, &y1, &y2}) {
    if (v->dimension() != dim) throw InvalidInput("supplement vertices must live in B_{n+2L}");
  }
  if (x1.level() != L || x2.level() != L) throw InvalidInput("x1 and x2 must lie at level L");
  if (y1.level() != n + L || y2.level() != n + L) throw InvalidInput("y1 and y2 must lie at level n+L");
  if (x1 == x2 || y1 == y2) throw InvalidInput("x1 != x2 and y1 != y2 required");
  if ((x1.bits() & ~y1.bits()) || (x2.bits() & ~y2.bits())) {
    throw InvalidInput("x_i must lie below y_i");
  }
}

PathPerm SupplementConfig::reference() const {
  return PathPerm(Vertex(y1.bits() & ~x1.bits(), n + 2 * L).labels(), n + 2 * L);
}

PathPerm supplement_bijection(const SupplementConfig& cfg, const PathPerm& p) {
  cfg.validate();
  const int n = cfg.n;
  const int L = cfg.L;
  const int dim = n + 2 * L;
  const Mask d1 = cfg.y1.bits() & ~cfg.x1.bits();
  if (p.dimension() != dim || static_cast<int>(p.size()) != n || p.support() != d1) {
    throw InvalidInput("path must be a permutation of y1 \\ x1");
  }

  // Relabel: x1 -> {1..L}, y1 \ x1 -> {L+1..L+n}, rest -> {n+L+1..n+2L},
  // each group in increasing order.
  std::vector<int> to_new(static_cast<std::size_t>(dim) + 1);
  std::vector<int> to_old(static_cast<std::size_t>(dim) + 1);
  int next = 1;
  for (Mask group : {cfg.x1.bits(), d1, ~cfg.y1.bits() & full_mask(dim)}) {
    for (int l = 1; l <= dim; ++l) {
      if (group & coord_bit(l)) {
        to_new[l] = next;
        to_old[next] = l;
        ++next;
      }
    }
  }
  auto relabel = [&](Mask m) {
    Mask out = 0;
    for (int l = 1; l <= dim; ++l) {
      if (m & coord_bit(l)) out |= coord_bit(to_new[l]);
    }
    return out;
  };

  const Mask target = relabel(cfg.y2.bits() & ~cfg.x2.bits());
  const Mask middle = full_mask(n + L) & ~full_mask(L);  // {L+1..L+n}
  std::vector<int> dropped;   // k_1 < ... < k_m
  std::vector<int> incoming;  // k'_1 < ... < k'_m
  for (int l = 1; l <= dim; ++l) {
    const bool in_middle = (middle & coord_bit(l)) != 0;
    const bool in_target = (target & coord_bit(l)) != 0;
    if (in_middle && !in_target) dropped.push_back(l);
    if (in_target && !in_middle) incoming.push_back(l);
  }

  std::vector<int> image;
  image.reserve(static_cast<std::size_t>(n));
  for (int old_label : p.labels()) {
    const int label = to_new[old_label];
    if (target & coord_bit(label)) {
      image.push_back(to_old[label]);
    } else {
      const auto t = std::lower_bound(dropped.begin(), dropped.end(), label) - dropped.begin();
      image.push_back(to_old[incoming[static_cast<std::size_t>(t)]]);
    }
  }
  return PathPerm(std::move(image), dim);
}

BigInt f1_exact(const SupplementConfig& cfg, int k) {
  cfg.validate();
  const int dim = cfg.n + 2 * cfg.L;
  if (dim > 10) throw CapacityError("f1_exact limited to n + 2L <= 10");
  if (k < 0) throw RangeError("k must be nonnegative");
  const int n = cfg.n;
  if (k > n) return 0;
  if (k == 0) return factorial(n);

  const Mask x2 = cfg.x2.bits();
  const Mask y2 = cfg.y2.bits();
  const Mask d2 = y2 & ~x2;
  std::vector<int> bits2;
  for (int b = 0; b < dim; ++b) {
    if (d2 >> b & 1U) bits2.push_back(b);
  }

  PathPerm gamma = cfg.reference();
  std::vector<int> order = gamma.labels();
  std::vector<int> gamma_bit(std::size_t{1} << dim, -1);
  // cnt[v][j]: paths x2 -> v with min(j, k) shared edges so far.
  const std::size_t width = static_cast<std::size_t>(k) + 1;
  std::vector<std::uint64_t> cnt((std::size_t{1} << dim) * width);
  std::uint64_t best = 0;
  do {
    std::fill(gamma_bit.begin(), gamma_bit.end(), -1);
    Mask cur = cfg.x1.bits();
    for (int l : order) {
      gamma_bit[cur] = l - 1;
      cur |= coord_bit(l);
    }
    std::fill(cnt.begin(), cnt.end(), 0);
    cnt[x2 * width] = 1;
    // Submasks of d2 in increasing numeric order visit v before v | bit.
    for (Mask sub = 0;; sub = (sub - d2) & d2) {
      const Mask v = x2 | sub;
      const std::uint64_t* row = &cnt[v * width];
      for (int b : bits2) {
        if (sub >> b & 1U) continue;
        const Mask w = v | (Mask{1} << b);
        const int step = gamma_bit[v] == b ? 1 : 0;
        std::uint64_t* dst = &cnt[w * width];
        for (std::size_t j = 0; j < width; ++j) {
          if (row[j]) dst[std::min(j + static_cast<std::size_t>(step), width - 1)] += row[j];
        }
      }
      if (sub == d2) break;
    }
    best = std::max(best, cnt[y2 * width + static_cast<std::size_t>(k)]);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace cubeperc
