#include "fbmax/covariance.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace fbmax {

double increment_variance(const HurstParam& h, double s, double t) {
  if (s < 0.0 || t < 0.0) {
    throw std::invalid_argument("increment_variance: s and t must be >= 0");
  }
  return std::pow(std::abs(s - t), h.two_h());
}

double covariance(const HurstParam& h, double s, double t) {
  if (s < 0.0 || t < 0.0) {
    throw std::invalid_argument("covariance: s and t must be >= 0");
  }
  const double p = h.two_h();
  return 0.5 * (std::pow(s, p) + std::pow(t, p) - std::pow(std::abs(s - t), p));
}

CovMatrix cov_matrix(const HurstParam& h, const UniformGrid& grid) {
  const std::size_t n = grid.size();
  const double p = h.two_h();
  std::vector<double> t_pow(n);   // (i/n)^{2H}, i = 1..n
  std::vector<double> gap_pow(n); // (d/n)^{2H}, d = 0..n-1
  for (std::size_t i = 0; i < n; ++i) {
    t_pow[i] = std::pow(grid.point(i), p);
    gap_pow[i] = std::pow(static_cast<double>(i) / static_cast<double>(n), p);
  }
  CovMatrix cov(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = 0.5 * (t_pow[i] + t_pow[j] - gap_pow[i - j]);
      cov.at(i, j) = v;
      cov.at(j, i) = v;
    }
  }
  return cov;
}

double fgn_autocovariance(const HurstParam& h, std::size_t n, std::size_t lag) {
  const double p = h.two_h();
  const double k = static_cast<double>(lag);
  const double scale = std::pow(static_cast<double>(n), -p);
  if (lag == 0) return scale;
  return 0.5 * (std::pow(k + 1.0, p) - 2.0 * std::pow(k, p) + std::pow(k - 1.0, p)) * scale;
}

}  // namespace fbmax
