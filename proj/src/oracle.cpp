#include "fbmax/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include <quadmath.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

// Every formula below is transcribed directly from its closed form and
// evaluated in __float128; nothing here calls into fbmax::bounds.

namespace fbmax::oracle {

namespace {

using f128 = __float128;

f128 l_constant_q() {
  return 1.0Q / sqrtq(4.0Q * M_PIq * expq(1.0Q) * logq(2.0Q));
}

}  // namespace

double l_constant() { return static_cast<double>(l_constant_q()); }

double delta_upper(double h, double n, double alpha) {
  const f128 hq = h;
  const f128 nq = n;
  const f128 aq = alpha;
  const f128 m = floorq(powq(nq, aq));
  const f128 ratio = 1.0Q + aq / (1.0Q + aq);
  const f128 denom = 1.0Q - powq(m, -hq) * sqrtq(ratio);
  const f128 value = powq(nq, -hq) * sqrtq(logq(nq)) * powq(1.0Q - 1.0Q / m, hq) *
                     sqrtq(1.0Q + aq) / denom;
  return static_cast<double>(value);
}

double delta_upper_old(double h, double n) {
  const f128 hq = h;
  const f128 nq = n;
  const f128 ln_n = logq(nq);
  const f128 nh = powq(nq, hq);
  const f128 value =
      2.0Q * sqrtq(ln_n) / nh * (1.0Q + 4.0Q / nh + 0.0074Q / powq(ln_n, 1.5Q));
  return static_cast<double>(value);
}

double delta_lower(double h, double n) {
  const f128 hq = h;
  const f128 nq = n;
  const f128 ln_n = logq(nq);
  f128 core = l_constant_q() / sqrtq(hq * ln_n) - 1.0Q;
  if (core < 0.0Q) core = 0.0Q;
  return static_cast<double>(sqrtq(ln_n) * core);
}

double mn_upper(double h, double n) {
  const f128 hq = h;
  const f128 nq = n;
  return static_cast<double>(sqrtq((1.0Q - powq(nq, -2.0Q * hq)) * logq(nq)));
}

double expected_max_iid_normals(std::size_t n) {
  if (n == 0) throw std::invalid_argument("expected_max_iid_normals: n must be >= 1");
  if (n == 1) return 0.0;
  const double nd = static_cast<double>(n);
  const auto density_mean = [nd](double x) {
    const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    const double cdf = 0.5 * std::erfc(-x / std::sqrt(2.0));
    return x * nd * phi * std::pow(cdf, nd - 1.0);
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(density_mean, -12.0,
                                                                       12.0, 10, 1e-13);
}

}  // namespace fbmax::oracle
