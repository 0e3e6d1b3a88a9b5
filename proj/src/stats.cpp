#include "fbmax/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fbmax {

double compensated_sum(std::span<const double> xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

SampleStats sample_stats(std::span<const double> xs) {
  if (xs.size() < 2) {
    throw std::invalid_argument("sample_stats: need at least 2 samples");
  }
  const auto n = static_cast<double>(xs.size());
  SampleStats s;
  s.n = xs.size();
  s.mean = compensated_sum(xs) / n;

  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double d = (x - s.mean) * (x - s.mean);
    const double t = sum + d;
    if (std::abs(sum) >= d) {
      comp += (sum - t) + d;
    } else {
      comp += (d - t) + sum;
    }
    sum = t;
  }
  const double ss = sum + comp;
  s.sd = std::sqrt(ss / (n - 1.0));
  s.se = s.sd / std::sqrt(n);
  return s;
}

namespace {

// Asymptotic Kolmogorov distribution with the small-sample correction
// lambda = (sqrt(ne) + 0.12 + 0.11/sqrt(ne)) * d.
double ks_p_value(double d, double n_effective) {
  const double sqn = std::sqrt(n_effective);
  const double lambda = (sqn + 0.12 + 0.11 / sqn) * d;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-12) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample: inputs must be nonempty");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult r;
  r.statistic = d;
  r.p_value = ks_p_value(d, na * nb / (na + nb));
  return r;
}

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace fbmax
