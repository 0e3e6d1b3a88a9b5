#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fbmax {

/// Neumaier-compensated sum; fixed left-to-right order.
double compensated_sum(std::span<const double> xs);

struct SampleStats {
  double mean = 0.0;
  double sd = 0.0;
  double se = 0.0;
  std::size_t n = 0;
};

/// Two-pass mean / sample standard deviation / standard error with compensated
/// accumulation. Requires n >= 2. Deterministic for a fixed input order.
SampleStats sample_stats(std::span<const double> xs);

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

/// Two-sample Kolmogorov-Smirnov test (asymptotic p-value).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

double normal_pdf(double x);
double normal_cdf(double x);

}  // namespace fbmax
