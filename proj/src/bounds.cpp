#include "fbmax/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fbmax::bounds {

namespace {

constexpr double kTwo53 = 9007199254740992.0;  // 2^53; every double >= this is an integer

void require_h_rough_range(const HurstParam& h, const char* op) {
  if (h.value() > 0.5) {
    throw std::domain_error(std::string(op) + ": requires H in (0, 1/2], got " +
                            std::to_string(h.value()));
  }
}

Condition make_condition(std::string name, double required, double actual, bool satisfied) {
  return Condition{std::move(name), required, actual, satisfied};
}

bool all_satisfied(const std::vector<Condition>& conditions) {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const Condition& c) { return c.satisfied; });
}

}  // namespace

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kUpperOld: return "upper_old";
    case BoundKind::kUpper: return "upper";
    case BoundKind::kUpperSeries: return "upper_series";
    case BoundKind::kLower: return "lower";
    case BoundKind::kMnUpper: return "mn_upper";
    case BoundKind::kMhUpper: return "mh_upper";
    case BoundKind::kMhLower: return "mh_lower";
    case BoundKind::kPickandsOurs: return "pickands_ours";
    case BoundKind::kPickandsShao: return "pickands_shao";
    case BoundKind::kPickandsFromMh: return "pickands_from_mh";
    case BoundKind::kDeltaF: return "delta_f";
  }
  return "unknown";
}

BoundKind bound_kind_from_string(const std::string& name) {
  for (BoundKind k : {BoundKind::kUpperOld, BoundKind::kUpper, BoundKind::kUpperSeries,
                      BoundKind::kLower, BoundKind::kMnUpper, BoundKind::kMhUpper,
                      BoundKind::kMhLower, BoundKind::kPickandsOurs, BoundKind::kPickandsShao,
                      BoundKind::kPickandsFromMh, BoundKind::kDeltaF}) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown bound kind: " + name);
}

std::vector<std::string> BoundReport::failed_conditions() const {
  std::vector<std::string> out;
  for (const Condition& c : conditions) {
    if (!c.satisfied) out.push_back(c.name);
  }
  return out;
}

BoundReport delta_upper_old(const HurstParam& h, std::size_t n) {
  const double hv = h.value();
  const double nd = static_cast<double>(n);
  const double n_min = std::pow(2.0, 1.0 / hv);

  BoundReport r;
  r.kind = BoundKind::kUpperOld;
  r.conditions.push_back(make_condition("n >= 2^(1/H)", n_min, nd, nd >= n_min));
  if (hv > 0.5) r.notes.push_back("H > 1/2: outside the proven range");

  const double ln_n = std::log(nd);
  const double nh = std::pow(nd, hv);
  r.value = 2.0 * std::sqrt(ln_n) / nh *
            (1.0 + 4.0 / nh + 0.0074 / std::pow(ln_n, 1.5));
  r.valid = all_satisfied(r.conditions);
  return r;
}

BoundReport delta_upper(const HurstParam& h, std::size_t n, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("delta_upper: alpha must be > 0");
  const double hv = h.value();
  const double nd = static_cast<double>(n);
  const double m = std::floor(std::pow(nd, alpha));
  const double ratio = 1.0 + alpha / (1.0 + alpha);
  const double n_min1 = std::pow(2.0, 1.0 / alpha);
  const double n_min2 = std::pow(ratio, 1.0 / (2.0 * alpha * hv));
  const double denom = 1.0 - std::pow(m, -hv) * std::sqrt(ratio);

  BoundReport r;
  r.kind = BoundKind::kUpper;
  r.conditions.push_back(make_condition("n >= 2^(1/alpha)", n_min1, nd, nd >= n_min1));
  r.conditions.push_back(make_condition("n >= (1+alpha/(1+alpha))^(1/(2 alpha H))", n_min2, nd,
                                        nd >= n_min2));
  // The two grid conditions do not imply a positive denominator once n^alpha is
  // floored (e.g. H=0.18, n=8, alpha=0.5 gives m=2 and a negative denominator),
  // so the denominator gates validity explicitly.
  r.conditions.push_back(make_condition("denominator > 0", 0.0, denom, denom > 0.0));
  if (hv > 0.5) r.notes.push_back("H > 1/2: outside the proven range");

  r.value = std::pow(nd, -hv) * std::sqrt(std::log(nd)) * std::pow(1.0 - 1.0 / m, hv) *
            std::sqrt(1.0 + alpha) / denom;
  r.valid = all_satisfied(r.conditions);
  return r;
}

BoundReport delta_upper_lerch(const HurstParam& h, std::size_t n, double alpha, double tol) {
  if (!(alpha > 0.0)) throw std::invalid_argument("delta_upper_lerch: alpha must be > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("delta_upper_lerch: tol must be > 0");
  const double hv = h.value();
  const double nd = static_cast<double>(n);
  const double m = std::floor(std::pow(nd, alpha));
  const double ratio = 1.0 + alpha / (1.0 + alpha);
  const double mh = std::pow(m, -hv);
  const double r_geom = mh * std::sqrt(ratio);

  BoundReport rep = delta_upper(h, n, alpha);
  rep.kind = BoundKind::kUpperSeries;

  if (r_geom >= 1.0) {
    // The majorizing geometric series diverges; the series itself diverges too
    // whenever mh >= 1 (m = 1), and cannot be certified otherwise.
    rep.value = std::numeric_limits<double>::infinity();
    rep.valid = false;
    rep.notes.push_back("series not summable: m^{-H} (1+alpha/(1+alpha))^{1/2} >= 1");
    return rep;
  }

  const double prefactor =
      std::pow(nd, -hv) * std::sqrt(std::log(nd)) * std::pow(1.0 - 1.0 / m, hv);
  const double tail_scale = std::sqrt(1.0 + alpha) / (1.0 - r_geom);
  double sum = 0.0;
  double m_pow = 1.0;   // m^{-kH}
  double r_pow = r_geom;  // r^{k+1}
  constexpr std::size_t kMaxTerms = 200000;
  for (std::size_t k = 0; k < kMaxTerms; ++k) {
    sum += std::sqrt(1.0 + alpha * (1.0 + static_cast<double>(k))) * m_pow;
    const double tail = tail_scale * r_pow;
    if (tail < tol * sum) {
      rep.value = prefactor * sum;
      return rep;
    }
    m_pow *= mh;
    r_pow *= r_geom;
  }
  throw std::runtime_error("delta_upper_lerch: series did not reach the tolerance");
}

BoundReport delta_lower(const HurstParam& h, std::size_t n) {
  if (n < 2) throw std::invalid_argument("delta_lower: n must be >= 2");
  const double hv = h.value();
  const double ln_n = std::log(static_cast<double>(n));
  const double core = constants::l_constant() / std::sqrt(hv * ln_n) - 1.0;

  BoundReport r;
  r.kind = BoundKind::kLower;
  r.value = std::sqrt(ln_n) * std::max(core, 0.0);
  r.valid = true;
  if (core <= 0.0) r.notes.push_back("trivial: H ln n >= L^2");
  return r;
}

double alpha_star(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("alpha_star: tol must be > 0");
  const double target = std::exp(2.0 * constants::l_constant_sq());
  const auto q = [](double a) { return std::pow(1.0 + a / (1.0 + a), 1.0 / a); };

  double lo = 0.1;
  double hi = 100.0;
  if (!(q(lo) > target && q(hi) < target)) {
    throw std::logic_error("alpha_star: bracket does not straddle the root");
  }
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    mid = 0.5 * (lo + hi);
    const double residual = q(mid) - target;
    if (std::abs(residual) < tol) return mid;
    if (residual > 0.0) {
      lo = mid;  // q decreasing: still above the target, move right
    } else {
      hi = mid;
    }
  }
  return mid;
}

ValidityRegion validity_region(const HurstParam& h, double alpha, std::size_t max_enumerated) {
  const double hv = h.value();
  if (!(hv < 0.5)) throw std::domain_error("validity_region: requires H in (0, 1/2)");
  if (!(alpha > 0.0)) throw std::invalid_argument("validity_region: alpha must be > 0");

  const double ratio = 1.0 + alpha / (1.0 + alpha);
  ValidityRegion r;
  r.n_lower = std::max(std::pow(2.0, 1.0 / alpha), std::pow(ratio, 1.0 / (2.0 * alpha * hv)));
  r.n_upper = std::exp(constants::l_constant_sq() / hv);

  if (std::abs(hv - 0.01) < 1e-12 && std::abs(alpha - 16.0) < 1e-12) {
    // Published endpoints for this case; they do not re-derive from L.
    r.published_interval = "(7.534, 20.085)";
  }

  if (r.n_upper > r.n_lower && std::isfinite(r.n_lower)) {
    const double first = std::floor(r.n_lower) + 1.0;
    const double last = std::isfinite(r.n_upper) ? std::ceil(r.n_upper) - 1.0
                                                 : std::numeric_limits<double>::infinity();
    if (first > 9.0e18) {
      r.truncated = true;  // beyond 64-bit integer range
    } else {
      for (double k = first; k <= last; k += 1.0) {
        if (r.feasible_integers.size() >= max_enumerated) {
          r.truncated = true;
          break;
        }
        r.feasible_integers.push_back(static_cast<long long>(k));
      }
    }
  }
  return r;
}

BoundReport mn_upper(const HurstParam& h, std::size_t n) {
  const double nd = static_cast<double>(n);
  BoundReport r;
  r.kind = BoundKind::kMnUpper;
  r.value = std::sqrt((1.0 - std::pow(nd, -h.two_h())) * std::log(nd));
  r.valid = true;
  return r;
}

double mh_lower(const HurstParam& h) {
  return constants::l_constant() / std::sqrt(h.value());
}

BoundReport mh_upper(const HurstParam& h) {
  require_h_rough_range(h, "mh_upper");
  const double hv = h.value();
  const double x = std::exp2(2.0 / hv);

  BoundReport r;
  r.kind = BoundKind::kMhUpper;

  bool dyadic = false;
  if (!std::isfinite(x) || x >= kTwo53) {
    dyadic = true;  // every representable value at this magnitude is an integer
  } else {
    const double nearest = std::round(x);
    dyadic = std::abs(x - nearest) < 1e-9 * x;
  }

  if (dyadic) {
    r.value = constants::kMhUpperCoef / std::sqrt(hv);
    r.conditions.push_back(make_condition("2^(2/H) integer", 1.0, 1.0, true));
  } else {
    const double h_tilde = 2.0 / std::log2(std::ceil(x));
    r.value = constants::kMhUpperCoef / std::sqrt(h_tilde);
    r.conditions.push_back(make_condition("H~ substituted (2^(2/H) not integer)", h_tilde, hv,
                                          true));
    r.notes.push_back("bound evaluated at H~ = " + std::to_string(h_tilde));
  }
  r.valid = all_satisfied(r.conditions);
  return r;
}

MhDerivation mh_upper_derivation(const HurstParam& h) {
  // n = 4^{1/H}, alpha = 2: n^{-H} = 1/4 and m^{-H} = 1/16 exactly.
  const double ln_n = 2.0 * std::numbers::ln2 / h.value();
  const double x = 0.25;
  const double mh = 0.0625;
  const double ratio = 1.0 + 2.0 / 3.0;
  MhDerivation d;
  d.bracket = x * std::sqrt(3.0) / (1.0 - mh * std::sqrt(ratio)) + std::sqrt(1.0 - x * x);
  d.bound = d.bracket * std::sqrt(ln_n);
  return d;
}

MhDerivation mh_upper_derivation(const HurstParam& h, double alpha, double n) {
  if (!(alpha > 0.0) || !(n > 1.0)) {
    throw std::invalid_argument("mh_upper_derivation: requires alpha > 0 and n > 1");
  }
  const double hv = h.value();
  const double x = std::pow(n, -hv);
  const double mh = std::pow(n, -alpha * hv);  // m = n^alpha
  const double ratio = 1.0 + alpha / (1.0 + alpha);
  MhDerivation d;
  d.bracket = x * std::sqrt(1.0 + alpha) / (1.0 - mh * std::sqrt(ratio)) +
              std::sqrt(1.0 - x * x);
  d.bound = d.bracket * std::sqrt(std::log(n));
  return d;
}

double pickands_ours(const HurstParam& h) {
  require_h_rough_range(h, "pickands_ours");
  const double hv = h.value();
  return std::pow(constants::kPickandsCoef * hv, 1.0 / (2.0 * hv));
}

double pickands_shao(const HurstParam& h) {
  require_h_rough_range(h, "pickands_shao");
  const double hv = h.value();
  const double inner = 4.4 - hv * std::log(0.4 + 1.25 / hv);
  const double base = 1.54 * hv + 4.82 * std::sqrt(hv) * std::sqrt(inner);
  return std::pow(base, 1.0 / hv);
}

double pickands_from_mh(const HurstParam& h, double mh_bound) {
  require_h_rough_range(h, "pickands_from_mh");
  if (mh_bound < mh_lower(h)) {
    throw std::invalid_argument("pickands_from_mh: mh_bound below the proven lower bound");
  }
  const double hv = h.value();
  return std::pow(std::numbers::sqrt2 * std::numbers::e * hv * mh_bound, 1.0 / hv);
}

DTable::DTable(std::size_t n) : n_(n), d_(n * n, 0.0) {
  if (n == 0) throw std::invalid_argument("DTable: size must be >= 1");
}

void DTable::set(std::size_t i, std::size_t j, double v) {
  if (v < 0.0) throw std::invalid_argument("DTable: entries must be nonnegative");
  if (i == j && v != 0.0) throw std::invalid_argument("DTable: diagonal must be zero");
  d_[i * n_ + j] = v;
  d_[j * n_ + i] = v;
}

DTable DTable::from_rows(std::size_t n, const std::vector<double>& row_major) {
  if (row_major.size() != n * n) {
    throw std::invalid_argument("DTable: expected n*n entries");
  }
  DTable t(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = row_major[i * n + j];
      const double b = row_major[j * n + i];
      if (std::abs(a - b) > 1e-12 * std::max({std::abs(a), std::abs(b), 1.0})) {
        throw std::invalid_argument("DTable: table not symmetric");
      }
      if (i == j && a != 0.0) throw std::invalid_argument("DTable: diagonal must be zero");
      if (a < 0.0) throw std::invalid_argument("DTable: entries must be nonnegative");
      t.d_[i * n + j] = a;
    }
  }
  return t;
}

double chatterjee_bound(const DTable& dx, const DTable& dy) {
  if (dx.size() != dy.size()) {
    throw std::invalid_argument("chatterjee_bound: table dimensions differ");
  }
  const std::size_t n = dx.size();
  double gamma = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      gamma = std::max(gamma, std::abs(dx.at(i, j) - dy.at(i, j)));
    }
  }
  return std::sqrt(gamma * std::log(static_cast<double>(n)));
}

std::pair<DTable, DTable> refinement_dtables(const HurstParam& h, std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw std::invalid_argument("refinement_dtables: n, m must be >= 1");
  const std::size_t total = n * m;
  const double p = h.two_h();
  DTable dx(total);
  DTable dy(total);
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = i + 1; j < total; ++j) {
      const double fine_gap = static_cast<double>(j - i) / static_cast<double>(total);
      dx.set(i, j, std::pow(fine_gap, p));
      const std::size_t bi = i / m;  // block of t = ceil((i+1)/m)/n
      const std::size_t bj = j / m;
      const double coarse_gap = static_cast<double>(bj - bi) / static_cast<double>(n);
      dy.set(i, j, std::pow(coarse_gap, p));
    }
  }
  return {std::move(dx), std::move(dy)};
}

double gamma_k_bound(const HurstParam& h, std::size_t n, double m) {
  if (!(m >= 2.0)) throw std::invalid_argument("gamma_k_bound: m must be >= 2");
  return std::pow(static_cast<double>(n), -h.two_h()) * std::pow(1.0 - 1.0 / m, h.two_h());
}

}  // namespace fbmax::bounds
