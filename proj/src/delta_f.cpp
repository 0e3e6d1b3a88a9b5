#include "fbmax/delta_f.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace fbmax::bounds {

namespace {

using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;

}  // namespace

DeltaFBound delta_f_generic(double delta, double big_m, double mh_surrogate,
                            const std::function<double(double)>& f,
                            const std::function<double(double, double)>& f_modulus,
                            double quad_tol) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta_f_generic: delta must be > 0");
  if (!(quad_tol > 0.0)) throw std::invalid_argument("delta_f_generic: quad_tol must be > 0");
  if (!(big_m > mh_surrogate)) {
    throw std::invalid_argument("delta_f_generic: M must exceed the expected-max surrogate");
  }

  const auto integrand = [&](double x) {
    const double y = x - mh_surrogate;
    return f(x) * y * std::exp(-0.5 * y * y);
  };

  // First panel [M, M+40]; extend while the last panel still contributes.
  double total = 0.0;
  double lo = big_m;
  double width = 40.0;
  constexpr int kMaxPanels = 256;
  for (int panel = 0; panel < kMaxPanels; ++panel) {
    const double hi = lo + width;
    const double part = Quad::integrate(integrand, lo, hi, 12, quad_tol);
    if (!std::isfinite(part)) {
      throw std::runtime_error("delta_f_generic: tail integrand is not integrable (f too large)");
    }
    total += part;
    if (std::abs(part) <= quad_tol * std::max(std::abs(total), 1e-300)) break;
    lo = hi;
    width = 10.0;
    if (panel == kMaxPanels - 1) {
      throw std::runtime_error("delta_f_generic: tail integral did not converge");
    }
  }

  DeltaFBound out;
  out.modulus_term = f_modulus(delta, big_m);
  out.tail_term = total;
  out.value = out.modulus_term + out.tail_term;
  out.mh_surrogate = mh_surrogate;
  return out;
}

double delta_f_exp(double a, double delta, double mh_surrogate) {
  if (!(a > 0.0)) throw std::invalid_argument("delta_f_exp: a must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta_f_exp: requires 0 < delta < 1");
  }
  const double z = std::sqrt(2.0 * std::abs(std::log(delta)));
  return std::exp(a * mh_surrogate + 0.5 * a * a) *
         (1.0 + std::exp(0.5 * a * a + a * z) + a / z) * delta;
}

double delta_f_pow(double p, double delta, double mh_surrogate) {
  if (!(p >= 1.0)) throw std::invalid_argument("delta_f_pow: p must be >= 1");
  if (!(delta > 0.0 && delta < std::exp(-0.5 * p))) {
    throw std::invalid_argument("delta_f_pow: requires 0 < delta < exp(-p/2)");
  }
  const double two_log = 2.0 * std::abs(std::log(delta));
  const double t = mh_surrogate + std::sqrt(two_log);
  return std::pow(t, p - 1.0) * (p + t / (1.0 - p / two_log)) * delta;
}

}  // namespace fbmax::bounds
