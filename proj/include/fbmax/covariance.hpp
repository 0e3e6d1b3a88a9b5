#pragma once

#include <cstddef>

#include "fbmax/types.hpp"

namespace fbmax {

/// E(B_s - B_t)^2 = |s - t|^{2H}. Requires s, t >= 0.
double increment_variance(const HurstParam& h, double s, double t);

/// E B_s B_t = (s^{2H} + t^{2H} - |s - t|^{2H}) / 2. Requires s, t >= 0.
double covariance(const HurstParam& h, double s, double t);

/// Covariance matrix of (B_{1/n}, ..., B_{n/n}). Symmetric positive definite,
/// diagonal entries equal (i/n)^{2H} exactly.
CovMatrix cov_matrix(const HurstParam& h, const UniformGrid& grid);

/// Autocovariance of the increment sequence B_{(k+1)/n} - B_{k/n} at the given lag:
/// rho(k) = ((k+1)^{2H} - 2 k^{2H} + |k-1|^{2H}) / 2 * n^{-2H}.
double fgn_autocovariance(const HurstParam& h, std::size_t n, std::size_t lag);

}  // namespace fbmax
