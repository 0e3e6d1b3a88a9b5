#pragma once

#include <functional>

namespace fbmax::bounds {

/// Bound on E f(sup B) - E f(max grid B) for nonnegative nondecreasing f:
/// continuity-modulus term plus a Gaussian tail integral. The exact expected
/// maximum is unknown, so callers supply a surrogate (typically mh_upper); the
/// record keeps the surrogate used.
struct DeltaFBound {
  double value = 0.0;
  double modulus_term = 0.0;
  double tail_term = 0.0;
  double mh_surrogate = 0.0;
};

/// f_modulus(delta, M) bounds the continuity modulus of f over [0, M] at scale
/// delta; the tail term integrates f(x) (x - mh) exp(-(x - mh)^2 / 2) over
/// [M, inf) by adaptive quadrature (relative tolerance quad_tol). Requires
/// big_m > mh_surrogate and f(x) = o(exp((x - mh)^2 / 2)); inadmissible f is
/// reported as a quadrature convergence failure.
DeltaFBound delta_f_generic(double delta, double big_m, double mh_surrogate,
                            const std::function<double(double)>& f,
                            const std::function<double(double, double)>& f_modulus,
                            double quad_tol = 1e-10);

/// Closed form for f(x) = e^{ax}, a > 0, 0 < delta < 1:
/// e^{a mh + a^2/2} (1 + e^{a^2/2 + a |2 ln delta|^{1/2}} + a |2 ln delta|^{-1/2}) delta.
double delta_f_exp(double a, double delta, double mh_surrogate);

/// Closed form for f(x) = x^p, p >= 1, 0 < delta < e^{-p/2}:
/// (mh + z)^{p-1} (p + (mh + z) / (1 - p |2 ln delta|^{-1})) delta, z = |2 ln delta|^{1/2}.
double delta_f_pow(double p, double delta, double mh_surrogate);

}  // namespace fbmax::bounds
