#pragma once

#include <cstddef>

namespace fbmax::oracle {

// Independent re-evaluations of the closed-form bounds in 128-bit floating
// point (33+ significant digits). These transcribe the formulas directly and
// share no code with fbmax::bounds; they exist to certify the double-precision
// implementations.

double l_constant();
double delta_upper(double h, double n, double alpha);
double delta_upper_old(double h, double n);
double delta_lower(double h, double n);
double mn_upper(double h, double n);

/// E max of n i.i.d. standard normals via quadrature of x n phi(x) Phi(x)^{n-1}.
double expected_max_iid_normals(std::size_t n);

}  // namespace fbmax::oracle
