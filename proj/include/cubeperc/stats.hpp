#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>

namespace cubeperc {

/// Wilson score interval for a binomial proportion.  InvalidInput when
/// trials is zero or successes exceeds trials.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double level = 0.95);

/// Two-sided standard normal quantile for a central interval of `level`.
double normal_quantile_two_sided(double level);

struct McEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double point = 0.0;
  double low = 0.0;
  double high = 1.0;
  std::uint64_t seed = 0;
  std::map<std::string, double> params;

  static McEstimate from_counts(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed,
                                std::map<std::string, double> params = {});
  /// Binomial standard error sqrt(p(1-p)/trials) at the point estimate.
  double stderr_() const;

  bool operator==(const McEstimate&) const = default;
};

/// |a - b| / sqrt(se_a^2 + se_b^2); zero when both errors vanish and the
/// points agree, infinite when they vanish and the points differ.
double z_difference(const McEstimate& a, const McEstimate& b);

struct KsResult {
  double statistic;
  double p_value;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic Kolmogorov
/// p-value at effective size nm/(n+m).  InvalidInput on empty input.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} e^{-2 k^2 lambda^2}.
double kolmogorov_survival(double lambda);

/// Dvoretzky-Kiefer-Wolfowitz half-width: sup |F_hat - F| <= eps with
/// probability 1 - alpha for m samples.
double dkw_epsilon(std::size_t m, double alpha);

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased
  std::size_t count = 0;
  double stderr_() const;
};
SampleMoments moments(std::span<const double> xs);

/// Sample median (mean of the two middle values for even counts); +inf
/// entries sort last.
double median(std::span<const double> xs);

}  // namespace cubeperc
