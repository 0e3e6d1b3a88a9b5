#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "fbmax/types.hpp"

namespace fbmax::bounds {

namespace constants {

/// L = 1 / sqrt(4 pi e ln 2); the constant of the lower bounds for M^H and for
/// the grid approximation gap. Computed from the formula, never hard-coded.
inline double l_constant() {
  return 1.0 / std::sqrt(4.0 * std::numbers::pi * std::numbers::e * std::numbers::ln2);
}

inline double l_constant_sq() {
  const double l = l_constant();
  return l * l;
}

/// Leading constant of the discrete-maximum correction for standard Brownian
/// motion: E max_{i<=n} W_{i/n} = E sup W - beta n^{-1/2} (1 + o(1)).
inline constexpr double kBetaBm = 0.5826;

/// E sup_{[0,1]} W for standard Brownian motion; sup =d |W_1| by reflection.
inline double bm_max_mean() { return std::sqrt(2.0 / std::numbers::pi); }

/// Coefficient of the M^H upper bound 1.695 H^{-1/2}.
inline constexpr double kMhUpperCoef = 1.695;

/// Coefficient of the Pickands bound (42.46 H)^{1/(2H)}; equals (sqrt(2) e 1.695)^2
/// up to display rounding.
inline constexpr double kPickandsCoef = 42.46;

/// 95% two-sided normal quantile used for confidence half-widths.
inline constexpr double kZ95 = 1.959964;

}  // namespace constants

enum class BoundKind {
  kUpperOld,
  kUpper,
  kUpperSeries,
  kLower,
  kMnUpper,
  kMhUpper,
  kMhLower,
  kPickandsOurs,
  kPickandsShao,
  kPickandsFromMh,
  kDeltaF,
};

const char* to_string(BoundKind kind);
BoundKind bound_kind_from_string(const std::string& name);

struct Condition {
  std::string name;
  double required = 0.0;
  double actual = 0.0;
  bool satisfied = false;
};

/// A bound value together with the evaluated validity conditions that gate it.
/// The value is always evaluated; `valid` is the conjunction of the condition
/// flags. Non-gating observations (e.g. H outside the proven range) go to notes.
struct BoundReport {
  BoundKind kind = BoundKind::kUpper;
  double value = 0.0;
  bool valid = false;
  std::vector<Condition> conditions;
  std::vector<std::string> notes;

  std::vector<std::string> failed_conditions() const;
};

/// Earlier upper bound for the grid gap:
/// 2 (ln n)^{1/2} n^{-H} (1 + 4 n^{-H} + 0.0074 (ln n)^{-3/2}); needs n >= 2^{1/H}.
BoundReport delta_upper_old(const HurstParam& h, std::size_t n);

/// Main upper bound for the grid gap. With m = floor(n^alpha):
///   n^{-H} (ln n)^{1/2} (1 - 1/m)^H (1+alpha)^{1/2} / (1 - m^{-H} (1 + alpha/(1+alpha))^{1/2}).
/// Conditions: n >= 2^{1/alpha}, n >= (1 + alpha/(1+alpha))^{1/(2 alpha H)}, denominator > 0.
BoundReport delta_upper(const HurstParam& h, std::size_t n, double alpha);

/// Sharper series form of the same bound: the majorized geometric series is
/// replaced by sum_k (1 + alpha + alpha k)^{1/2} m^{-kH} (a Lerch-transcendent
/// series), truncated when the certified geometric tail falls below tol times
/// the partial sum. Always <= delta_upper on valid inputs.
BoundReport delta_upper_lerch(const HurstParam& h, std::size_t n, double alpha,
                              double tol = 1e-12);

/// Lower bound for the grid gap, valid for all H in (0,1) and n >= 2:
/// (ln n)^{1/2} (L / (H ln n)^{1/2} - 1)^+; zero once n >= exp(L^2/H).
BoundReport delta_lower(const HurstParam& h, std::size_t n);

/// Unique root of (1 + alpha/(1+alpha))^{1/alpha} = exp(2 L^2), by bisection on
/// [0.1, 100]; the left side strictly decreases from e to 1.
double alpha_star(double tol = 1e-10);

struct ValidityRegion {
  double n_lower = 0.0;
  double n_upper = 0.0;
  std::vector<long long> feasible_integers;
  bool truncated = false;
  /// Externally published endpoints for (H, alpha) = (0.01, 16); they do not
  /// re-derive from L and are reported alongside the recomputed ones.
  std::string published_interval;
};

/// Interval of n on which the upper bound holds and the lower bound is
/// non-trivial: (max(2^{1/alpha}, (1+alpha/(1+alpha))^{1/(2 alpha H)}), exp(L^2/H)).
/// Requires H in (0, 1/2) and alpha > 0.
ValidityRegion validity_region(const HurstParam& h, double alpha,
                               std::size_t max_enumerated = 100000);

/// Upper bound for the grid maximum itself: ((1 - n^{-2H}) ln n)^{1/2}.
BoundReport mn_upper(const HurstParam& h, std::size_t n);

/// Lower bound L H^{-1/2} for the expected maximum, valid for all H in (0,1).
double mh_lower(const HurstParam& h);

/// Upper bound 1.695 H^{-1/2} for the expected maximum, H in (0, 1/2]. When
/// 2^{2/H} is not an integer the largest H~ < H with 2^{2/H~} integer is
/// substituted (monotonicity of M^H in H); the substitution is recorded in the
/// report conditions.
BoundReport mh_upper(const HurstParam& h);

struct MhDerivation {
  double bracket = 0.0;  // n^{-H}(1+a)^{1/2} / (1 - m^{-H}(1+a/(1+a))^{1/2}) + (1-n^{-2H})^{1/2}
  double bound = 0.0;    // bracket * (ln n)^{1/2}
};

/// The bracket behind the 1.695 coefficient, at the canonical choice
/// n = 4^{1/H}, alpha = 2 (so n^{-H} = 1/4 and m^{-H} = 1/16 exactly).
MhDerivation mh_upper_derivation(const HurstParam& h);

/// Exploratory variant for arbitrary alpha and n (m = n^alpha).
MhDerivation mh_upper_derivation(const HurstParam& h, double alpha, double n);

/// (42.46 H)^{1/(2H)}, H in (0, 1/2].
double pickands_ours(const HurstParam& h);

/// Shao's bound {1.54 H + 4.82 H^{1/2} (4.4 - H ln(0.4 + 1.25/H))^{1/2}}^{1/H}.
double pickands_shao(const HurstParam& h);

/// (sqrt(2) e H mh_bound)^{1/H} for any upper bound mh_bound on M^H.
double pickands_from_mh(const HurstParam& h, double mh_bound);

/// Symmetric nonnegative table of pairwise increment variances d_ij = E(Z_i - Z_j)^2
/// with zero diagonal; fully describes the expected maximum of a zero-mean
/// Gaussian vector.
class DTable {
 public:
  explicit DTable(std::size_t n);
  static DTable from_rows(std::size_t n, const std::vector<double>& row_major);

  std::size_t size() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v);
  const std::vector<double>& data() const { return d_; }

 private:
  std::size_t n_;
  std::vector<double> d_;
};

/// (gamma ln N)^{1/2} with gamma = max_{i<j} |dx_ij - dy_ij|; the comparison
/// bound for expected maxima of Gaussian vectors with common means.
double chatterjee_bound(const DTable& dx, const DTable& dy);

/// Increment-variance tables of the grid-refinement pair: X_i = B_{i/(nm)} and
/// Y_i = B_{ceil(i/m)/n}, i = 1..nm.
std::pair<DTable, DTable> refinement_dtables(const HurstParam& h, std::size_t n, std::size_t m);

/// Closed-form majorant of max|d_ij(X) - d_ij(Y)| for the refinement pair:
/// n^{-2H} (1 - 1/m)^{2H}. Requires m >= 2.
double gamma_k_bound(const HurstParam& h, std::size_t n, double m);

}  // namespace fbmax::bounds
