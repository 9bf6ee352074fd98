#include "cubeperc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "cubeperc/errors.hpp"

namespace cubeperc {

double normal_quantile_two_sided(double level) {
  if (!(level > 0.0 && level < 1.0)) throw RangeError("confidence level must lie in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + 0.5 * level);
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double level) {
  if (trials == 0) throw InvalidInput("wilson_interval needs trials > 0");
  if (successes > trials) throw InvalidInput("successes exceed trials");
  const double z = normal_quantile_two_sided(level);
  const double n = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (ph + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n)) / denom;
  double low = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  double high = successes == trials ? 1.0 : std::min(1.0, centre + half);
  return {low, high};
}

McEstimate McEstimate::from_counts(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed,
                                   std::map<std::string, double> params) {
  McEstimate e;
  e.successes = successes;
  e.trials = trials;
  e.point = static_cast<double>(successes) / static_cast<double>(trials);
  std::tie(e.low, e.high) = wilson_interval(successes, trials);
  e.low = std::min(e.low, e.point);
  e.high = std::max(e.high, e.point);
  e.seed = seed;
  e.params = std::move(params);
  return e;
}

double McEstimate::stderr_() const {
  return std::sqrt(point * (1.0 - point) / static_cast<double>(trials));
}

double z_difference(const McEstimate& a, const McEstimate& b) {
  const double se = std::hypot(a.stderr_(), b.stderr_());
  const double diff = std::abs(a.point - b.point);
  if (se == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / se;
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;  // series alternates badly; Q is 1 to double precision here
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidInput("ks_two_sample needs nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  const double ne = n * m / (n + m);
  const double root = std::sqrt(ne);
  return {d, kolmogorov_survival((root + 0.12 + 0.11 / root) * d)};
}

double dkw_epsilon(std::size_t m, double alpha) {
  if (m == 0) throw InvalidInput("dkw_epsilon needs m > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw RangeError("alpha must lie in (0, 1)");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(m)));
}

SampleMoments moments(std::span<const double> xs) {
  SampleMoments out;
  out.count = xs.size();
  if (xs.empty()) return out;
  // Welford
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double x : xs) {
    ++k;
    const double delta = x - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (x - mean);
  }
  out.mean = mean;
  out.variance = k > 1 ? m2 / static_cast<double>(k - 1) : 0.0;
  return out;
}

double SampleMoments::stderr_() const {
  return count == 0 ? 0.0 : std::sqrt(variance / static_cast<double>(count));
}

double median(std::span<const double> xs) {
  if (xs.empty()) throw InvalidInput("median of an empty sample");
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace cubeperc
