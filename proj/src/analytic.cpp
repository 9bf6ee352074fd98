#include "cubeperc/analytic.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "cubeperc/errors.hpp"

namespace cubeperc {

ExtinctionResult extinction_probability(double c) {
  if (!(c > 0.0)) throw DomainError("offspring mean c must be positive");
  if (c <= 1.0) return {c, 1.0, 0.0};
  auto residual = [c](double x) { return x - std::exp(c * (x - 1.0)); };
  // Bisect on d = 1 - x, where log1p(-d) + c d is positive below the root
  // and negative above it; this form stays accurate for c close to 1.
  auto side = [c](double d) { return std::log1p(-d) + c * d; };
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (side(mid) > 0.0 ? lo : hi) = mid;
  }
  double x = 1.0 - 0.5 * (lo + hi);
  for (int i = 0; i < 5; ++i) {
    const double r = residual(x);
    if (std::abs(r) <= 1e-15) break;
    const double step = r / (1.0 - c * std::exp(c * (x - 1.0)));
    const double next = x - step;
    if (!(next > 0.0 && next < 1.0)) break;
    x = next;
  }
  return {c, x, (1.0 - x) * (1.0 - x)};
}

double erlang_tail(int n, double u) {
  if (n < 1) throw RangeError("erlang_tail needs n >= 1");
  if (!(u >= 0.0)) throw RangeError("erlang_tail needs u >= 0");
  if (u == 0.0) return 0.0;
  const double nd = n;
  if (u < nd) {
    // sum_{m >= n} e^{-u} u^m / m! = e^{-u} u^n / n! * sum_l u^l / ((n+1)...(n+l))
    const double lead = std::exp(-u + nd * std::log(u) - std::lgamma(nd + 1.0));
    double term = 1.0;
    double sum = 1.0;
    for (int l = 1; l < 100000; ++l) {
      term *= u / (nd + l);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return lead * sum;
  }
  // u >= n: the upper tail is at least about one half, so the complement of
  // the lower Poisson sum loses no relative precision.
  double lower = 0.0;
  for (int m = n - 1; m >= 0; --m) {
    lower += std::exp(-u + m * std::log(u) - std::lgamma(m + 1.0));
  }
  return std::max(0.0, 1.0 - lower);
}

double log_R(int n, int k) {
  if (k < 1 || k > n - 1) throw RangeError("log_R needs 1 <= k <= n-1");
  const double a = 2.0 * n - k;
  const double b = static_cast<double>(n - k);
  return 2.0 * b * std::numbers::ln2 + a - a * std::log(a) - 0.5 * std::log(b) - 0.5 * std::log(a);
}

double joint_tail_scale(int n, int k) {
  if (k < 1 || k > n - 1) throw RangeError("joint_tail_scale needs 1 <= k <= n-1");
  const double b = static_cast<double>(n - k);
  return std::exp(std::lgamma(2.0 * b + 1.0) - 2.0 * std::lgamma(b + 1.0) - std::lgamma(2.0 * n - k + 1.0));
}

std::pair<double, double> lipschitz_tail_bounds(int n, double u, double K4) {
  if (!(u > 0.0 && u <= 1.0)) throw RangeError("lipschitz_tail_bounds needs 0 < u <= 1");
  if (!(K4 >= 0.0)) throw RangeError("K4 must be nonnegative");
  const double tail = erlang_tail(n, u);
  return {std::exp(-K4 * u) * tail, std::exp((1.0 + K4) * u) * tail};
}

double second_moment_ratio(const OverlapTable& table, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw RangeError("edge probability must lie in (0, 1]");
  const BigInt nfact = factorial(table.n);
  double ratio = 0.0;
  for (std::size_t k = 0; k < table.f.size(); ++k) {
    if (table.f[k] == 0) continue;
    const double share = static_cast<double>(table.f[k]) / static_cast<double>(nfact);
    ratio += share * std::pow(p, -static_cast<double>(k));
  }
  return ratio;
}

double second_moment_lower_bound(const OverlapTable& table, double p) {
  return 1.0 / second_moment_ratio(table, p);
}

double heat_kernel(int level, int n, double t) {
  if (!(t >= 0.0)) throw RangeError("time must be nonnegative");
  if (level < 0 || level > n) throw RangeError("level must lie in [0, n]");
  const double decay = std::exp(-2.0 * t);
  const double away = -0.5 * std::expm1(-2.0 * t);
  const double stay = 0.5 * (1.0 + decay);
  return std::pow(away, level) * std::pow(stay, n - level);
}

double heat_kernel(Vertex x, double t) { return heat_kernel(x.level(), x.dimension(), t); }

double btp_mean(int level, int n, double t) { return std::exp(n * t) * heat_kernel(level, n, t); }

double btp_mean(Vertex x, double t) { return btp_mean(x.level(), x.dimension(), t); }

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  double tol;
  int max_depth;
};

double simpson_step(const SimpsonState& st, double a, double b, double fa, double fm, double fb,
                    double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth >= st.max_depth || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return simpson_step(st, a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
         simpson_step(st, m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
}

/// Adaptive Simpson with relative tolerance against a coarse first pass.
double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 int max_depth = 40) {
  if (b <= a) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  // Scale the absolute tolerance from a 64-panel estimate so it does not
  // collapse when the three-point rule happens to be near zero.
  double scale = 0.0;
  const int panels = 64;
  for (int i = 0; i <= panels; ++i) scale += std::abs(f(a + (b - a) * i / panels));
  scale *= (b - a) / (panels + 1);
  SimpsonState st{f, rel_tol, max_depth};
  return simpson_step(st, a, b, fa, fm, fb, whole, rel_tol * std::max(scale, 1e-300), 0);
}

}  // namespace

double btp_second_moment(double t, int n) {
  if (n < 1) throw RangeError("n must be positive");
  if (n > 10) throw CapacityError("btp_second_moment sums over 2^n vertices; n <= 10");
  if (!(t >= 0.0)) throw RangeError("time must be nonnegative");
  const Mask top = full_mask(n);
  const std::function<double(double)> integrand = [n, t, top](double s) {
    double acc = 0.0;
    for (Mask y = 0; y <= top; ++y) {
      const double here = btp_mean(popcount(y), n, s);
      const double rest = btp_mean(popcount(top ^ y), n, t - s);
      for (int i = 0; i < n; ++i) {
        acc += here * rest * btp_mean(popcount(top ^ y ^ (Mask{1} << i)), n, t - s);
      }
    }
    return acc;
  };
  return btp_mean(n, n, t) + 2.0 * integrate(integrand, 0.0, t, 1e-8);
}

double G_function(double s, double u) {
  if (!(s >= 0.0 && s <= u)) throw RangeError("G_function needs 0 <= s <= u");
  const double denom = std::expm1(-2.0 * u);
  return -s + std::log1p((std::exp(-4.0 * (u - s)) - std::exp(-4.0 * u)) / (denom * denom));
}

double G_second_derivative(double s, double u) {
  if (!(s >= 0.0 && s <= u)) throw RangeError("G_second_derivative needs 0 <= s <= u");
  const double denom = std::expm1(-2.0 * u);
  const double c = std::exp(-4.0 * u) / (denom * denom);
  const double g = std::exp(4.0 * s);
  const double d = 1.0 + c * (g - 1.0);
  return 16.0 * c * (1.0 - c) * g / (d * d);
}

double V_epsilon(double eps) {
  const double u = std::log(1.0 + std::numbers::sqrt2) + eps;
  return -G_function(u, u);
}

double subcritical_bound(int n, double c) {
  if (n < 1) throw RangeError("n must be positive");
  if (!(c > 0.0 && c < 1.0)) throw RangeError("subcritical bound needs 0 < c < 1");
  return std::pow(c, n);
}

std::map<std::string, double> theorem_constants() {
  const double reach = 2.0 * std::log(4.0 + 2.0 * std::sqrt(3.0)) + 3.0;
  return {
      {"btp_lower", std::log(1.0 + std::numbers::sqrt2)},
      {"single_vertex_upper", 1.0},
      {"reach_constant", reach},
      {"cover_upper", 2.0 * reach},
      {"cover_lower", 0.5 * std::log(2.0 + std::sqrt(5.0)) + std::numbers::ln2},
  };
}

}  // namespace cubeperc
