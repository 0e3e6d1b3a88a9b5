#include "fbmax/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fbmax/bounds.hpp"
#include "fbmax/covariance.hpp"
#include "fbmax/io.hpp"
#include "fbmax/montecarlo.hpp"
#include "fbmax/oracle.hpp"
#include "fbmax/random.hpp"
#include "fbmax/sampler.hpp"
#include "fbmax/stats.hpp"

namespace fbmax::validate {

namespace {

namespace bnd = fbmax::bounds;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::size_t scaled(std::size_t base, double scale) {
  const auto v = static_cast<std::size_t>(std::llround(static_cast<double>(base) * scale));
  return std::max<std::size_t>(2000, v);
}

std::uint64_t sub_seed(std::uint64_t master, std::uint64_t tag) {
  return splitmix64(master ^ splitmix64(tag));
}

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }

  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

// ---- criterion 1: constant re-derivations -----------------------------------

CriterionResult c1_constants(const Options&) {
  Check c;
  const double l = bnd::constants::l_constant();
  c.require(std::abs(l - 0.2055) < 1e-3, "L=" + fmt(l) + " not within 1e-3 of 0.2055");
  const double astar = bnd::alpha_star(1e-10);
  c.require(std::abs(astar - 7.48704) < 1e-4,
            "alpha*=" + fmt(astar) + " not within 1e-4 of 7.48704");
  const double coef =
      std::pow(std::numbers::sqrt2 * std::numbers::e * bnd::constants::kMhUpperCoef, 2.0);
  c.require(coef >= 42.45 && coef <= 42.47, "(sqrt2 e 1.695)^2=" + fmt(coef) + " outside [42.45,42.47]");
  if (c.ok) {
    c.detail = "L=" + fmt(l) + " alpha*=" + fmt(astar) + " (sqrt2 e 1.695)^2=" + fmt(coef);
  }
  return {1, "constants", c.ok, c.detail, 0.0};
}

// ---- criterion 2: the 1.695 bracket ------------------------------------------

CriterionResult c2_mh_derivation(const Options& opts) {
  const double coef = opts.mh_upper_coef > 0.0 ? opts.mh_upper_coef
                                               : bnd::constants::kMhUpperCoef;
  const bnd::MhDerivation d = bnd::mh_upper_derivation(HurstParam(0.25));
  const double constant = d.bracket * std::sqrt(std::log(4.0));
  Check c;
  c.require(constant > 1.6940 && constant < 1.6950,
            "bracket*sqrt(ln4)=" + fmt(constant) + " outside (1.6940, 1.6950)");
  c.require(constant < coef, "bracket*sqrt(ln4)=" + fmt(constant) + " not below " + fmt(coef));
  if (c.ok) c.detail = "bracket*sqrt(ln4)=" + fmt(constant) + " < " + fmt(coef);
  return {2, "mh_upper_derivation", c.ok, c.detail, 0.0};
}

// ---- criterion 3: Pickands ratios --------------------------------------------

CriterionResult c3_pickands(const Options&) {
  Check c;
  const double r45 = bnd::pickands_ours(HurstParam(0.45)) / bnd::pickands_shao(HurstParam(0.45));
  const double r15 = bnd::pickands_ours(HurstParam(0.15)) / bnd::pickands_shao(HurstParam(0.15));
  c.require(std::abs(r45 - 0.344) <= 0.005, "ratio(0.45)=" + fmt(r45) + " not 0.344 +/- 0.005");
  c.require(std::abs(r15 - 0.046) <= 0.002, "ratio(0.15)=" + fmt(r15) + " not 0.046 +/- 0.002");
  if (c.ok) c.detail = "ratio(0.45)=" + fmt(r45) + " ratio(0.15)=" + fmt(r15);
  return {3, "pickands_ratios", c.ok, c.detail, 0.0};
}

// ---- criteria 4 & 5: closed forms vs the 128-bit oracle ----------------------

const std::vector<double>& grid_h() {
  static const std::vector<double> v{0.04, 0.09, 0.18, 0.3, 0.45};
  return v;
}
const std::vector<std::size_t>& grid_n() {
  static const std::vector<std::size_t> v{4, 8, 16, 64, 256};
  return v;
}
const std::vector<double>& grid_alpha() {
  static const std::vector<double> v{0.5, 1.0, 2.0};
  return v;
}

double rel_diff(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

CriterionResult c4_closed_form_oracle(const Options&) {
  Check c;
  double worst = 0.0;
  std::string worst_at;
  const auto track = [&](double impl, double oracle, const std::string& where) {
    const double r = rel_diff(impl, oracle);
    if (r > worst) {
      worst = r;
      worst_at = where;
    }
  };
  for (double h : grid_h()) {
    const HurstParam hp(h);
    for (std::size_t n : grid_n()) {
      const double nd = static_cast<double>(n);
      track(bnd::delta_lower(hp, n).value, oracle::delta_lower(h, nd),
            "lower(h=" + fmt(h) + ",n=" + fmt(nd) + ")");
      track(bnd::delta_upper_old(hp, n).value, oracle::delta_upper_old(h, nd),
            "upper_old(h=" + fmt(h) + ",n=" + fmt(nd) + ")");
      track(bnd::mn_upper(hp, n).value, oracle::mn_upper(h, nd),
            "mn_upper(h=" + fmt(h) + ",n=" + fmt(nd) + ")");
      for (double alpha : grid_alpha()) {
        track(bnd::delta_upper(hp, n, alpha).value, oracle::delta_upper(h, nd, alpha),
              "upper(h=" + fmt(h) + ",n=" + fmt(nd) + ",a=" + fmt(alpha) + ")");
      }
    }
  }
  c.require(worst <= 1e-12, "worst relative error " + fmt(worst) + " at " + worst_at);
  if (c.ok) c.detail = "worst relative error " + fmt(worst) + " at " + worst_at;
  return {4, "closed_form_oracle", c.ok, c.detail, 0.0};
}

CriterionResult c5_series_vs_majorant(const Options&) {
  Check c;
  std::size_t valid_points = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (double h : grid_h()) {
    const HurstParam hp(h);
    for (std::size_t n : grid_n()) {
      for (double alpha : grid_alpha()) {
        const bnd::BoundReport upper = bnd::delta_upper(hp, n, alpha);
        if (!upper.valid) continue;
        ++valid_points;
        const bnd::BoundReport series = bnd::delta_upper_lerch(hp, n, alpha, 1e-14);
        const double gap = upper.value - series.value;
        min_gap = std::min(min_gap, gap);
        c.require(series.value <= upper.value,
                  "series " + fmt(series.value) + " > majorant " + fmt(upper.value) + " at h=" +
                      fmt(h) + " n=" + fmt(double(n)) + " a=" + fmt(alpha));
        c.require(gap > 0.0, "gap not positive at h=" + fmt(h) + " n=" + fmt(double(n)) +
                                 " a=" + fmt(alpha));
      }
    }
  }
  c.require(valid_points > 0, "no valid grid points");
  if (c.ok) {
    c.detail = std::to_string(valid_points) + " valid points, min gap " + fmt(min_gap);
  }
  return {5, "series_vs_majorant", c.ok, c.detail, 0.0};
}

// ---- criterion 6: sampler law -------------------------------------------------

// Empirical E(B_s - B_t)^2 over all grid pairs (t = 0 included) vs |s-t|^{2H},
// judged at 4 theoretical SEs: sd of (X_i - X_j)^2 is d_ij sqrt(2).
std::size_t increment_variance_violations(const HurstParam& h, std::size_t n,
                                          std::vector<std::vector<double>> const& paths,
                                          double* worst_z) {
  const std::size_t pairs = (n + 1) * n / 2;
  std::vector<double> acc(pairs, 0.0);
  for (const auto& v : paths) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i <= n; ++i) {
      const double vi = i == 0 ? 0.0 : v[i - 1];
      for (std::size_t j = i + 1; j <= n; ++j) {
        const double d = vi - v[j - 1];
        acc[idx++] += d * d;
      }
    }
  }
  const double n_samples = static_cast<double>(paths.size());
  std::size_t violations = 0;
  std::size_t idx = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double ti = static_cast<double>(i) / static_cast<double>(n);
    for (std::size_t j = i + 1; j <= n; ++j) {
      const double tj = static_cast<double>(j) / static_cast<double>(n);
      const double expected = increment_variance(h, ti, tj);
      const double se = expected * std::sqrt(2.0 / n_samples);
      const double z = std::abs(acc[idx++] / n_samples - expected) / se;
      if (worst_z != nullptr) *worst_z = std::max(*worst_z, z);
      if (z > 4.0) ++violations;
    }
  }
  return violations;
}

CriterionResult c6_sampler_law(const Options& opts) {
  Check c;
  const std::size_t n_paths = scaled(100000, opts.scale);
  const std::size_t ks_paths = std::min<std::size_t>(scaled(10000, opts.scale), n_paths);
  const std::vector<std::pair<double, std::size_t>> configs{{0.2, 32}, {0.3, 64}, {0.5, 64}};
  double worst_z = 0.0;
  double min_p = 1.0;
  for (const auto& [h, n] : configs) {
    const HurstParam hp(h);
    const UniformGrid grid(n);
    std::vector<double> max_chol;
    std::vector<double> max_circ;
    for (mc::Method method : {mc::Method::kCholesky, mc::Method::kCirculant}) {
      const std::uint64_t seed =
          sub_seed(opts.seed, 600 + n + (method == mc::Method::kCholesky ? 1 : 2));
      std::vector<std::vector<double>> paths(n_paths, std::vector<double>(n));
      if (method == mc::Method::kCholesky) {
        CholeskySampler sampler(hp, grid);
        for (std::size_t i = 0; i < n_paths; ++i) {
          RandomStream rs(seed, i);
          sampler.sample_values(rs, paths[i]);
        }
      } else {
        CirculantSampler sampler(hp, grid);
        for (std::size_t i = 0; i < n_paths; ++i) {
          RandomStream rs(seed, i);
          sampler.sample_values(rs, paths[i]);
        }
      }
      const std::size_t bad = increment_variance_violations(hp, n, paths, &worst_z);
      c.require(bad == 0, mc::to_string(method) + std::string("(h=") + fmt(h) + ",n=" +
                              fmt(double(n)) + "): " + std::to_string(bad) +
                              " pairwise variances beyond 4 SE");
      auto& maxima = method == mc::Method::kCholesky ? max_chol : max_circ;
      maxima.reserve(ks_paths);
      for (std::size_t i = 0; i < ks_paths; ++i) {
        maxima.push_back(*std::max_element(paths[i].begin(), paths[i].end()));
      }
    }
    const KsResult ks = ks_two_sample(max_chol, max_circ);
    min_p = std::min(min_p, ks.p_value);
    c.require(ks.p_value > 0.001, "KS p=" + fmt(ks.p_value) + " <= 0.001 at h=" + fmt(h) +
                                      ", n=" + fmt(double(n)));
  }
  if (c.ok) {
    c.detail = "worst |z|=" + fmt(worst_z) + ", min KS p=" + fmt(min_p) + " (" +
               std::to_string(n_paths) + " paths/method)";
  }
  return {6, "sampler_law", c.ok, c.detail, 0.0};
}

// ---- criterion 7: H = 1/2 calibration -----------------------------------------

CriterionResult c7_calibration(const Options& opts) {
  Check c;
  const HurstParam half(0.5);
  const std::size_t n_samples = scaled(1000000, opts.scale);
  mc::RunOptions run{sub_seed(opts.seed, 701), opts.threads, mc::Method::kCirculant};

  const mc::McEstimate mn = mc::estimate_mn(half, 1024, n_samples, run);
  const double mn_target = std::sqrt(std::numbers::pi / 2.0) -
                           bnd::constants::kBetaBm / std::sqrt(1024.0);
  const double mn_gap = std::abs(mn.mean - mn_target);
  c.require(mn_gap <= 4.0 * mn.std_err,
            "mn(1/2,1024) mean=" + fmt(mn.mean) + " vs stated target " + fmt(mn_target) +
                ": |diff|=" + fmt(mn_gap) + " > 4*se=" + fmt(4.0 * mn.std_err) +
                " [reflection-principle value sqrt(2/pi)-beta/32=" +
                fmt(bnd::constants::bm_max_mean() - bnd::constants::kBetaBm / 32.0) + "]");

  run.seed = sub_seed(opts.seed, 702);
  const mc::DeltaProxy proxy = mc::delta_proxy(half, 64, 4096, n_samples, run);
  const double proxy_target = bnd::constants::kBetaBm * (1.0 / 8.0 - 1.0 / 64.0);
  const double proxy_gap = std::abs(proxy.proxy - proxy_target);
  c.require(proxy_gap <= 4.0 * proxy.se,
            "delta_proxy(1/2,64,4096)=" + fmt(proxy.proxy) + " vs target " + fmt(proxy_target) +
                ": |diff|=" + fmt(proxy_gap) + " > 4*se=" + fmt(4.0 * proxy.se) +
                " [first-order coefficient target ignores the O(1/n) term at n=64]");
  if (c.ok) c.detail = "mn gap " + fmt(mn_gap) + ", proxy gap " + fmt(proxy_gap);
  return {7, "calibration_h_half", c.ok, c.detail, 0.0};
}

// ---- criterion 8: refinement increments vs the gamma bound --------------------

CriterionResult c8_increment_mechanics(const Options& opts) {
  Check c;
  const std::size_t n_samples = scaled(200000, opts.scale);
  const std::vector<std::tuple<double, std::size_t, std::size_t>> cases{
      {0.2, 8, 4}, {0.3, 16, 4}, {0.4, 16, 2}};
  for (const auto& [h, n, m] : cases) {
    const HurstParam hp(h);
    mc::RunOptions run{sub_seed(opts.seed, 800 + n + m), opts.threads, mc::Method::kCirculant};
    const mc::IncrementEstimate inc = mc::estimate_increment(hp, n, m, n_samples, run);
    const double gamma0 = bnd::gamma_k_bound(hp, n, static_cast<double>(m));
    const double rhs = std::sqrt(gamma0 * std::log(static_cast<double>(n * m)));
    c.require(inc.coupling_violations == 0,
              std::to_string(inc.coupling_violations) + " coupling violations at h=" + fmt(h));
    c.require(inc.diff_mean - 4.0 * inc.diff_std_err <= rhs,
              "diff=" + fmt(inc.diff_mean) + " - 4se not <= bound " + fmt(rhs) + " at h=" +
                  fmt(h) + ", n=" + fmt(double(n)) + ", m=" + fmt(double(m)));
  }
  if (c.ok) c.detail = "3 cases, coarse<=fine on 100% of paths, bound respected";
  return {8, "increment_mechanics", c.ok, c.detail, 0.0};
}

// ---- criterion 9: comparison inequality on explicit vectors -------------------

CriterionResult c9_chatterjee(const Options& opts) {
  Check c;
  const std::size_t n_samples = scaled(100000, opts.scale);
  {
    const auto [dx, dy] = bnd::refinement_dtables(HurstParam(0.2), 4, 3);
    mc::RunOptions run{sub_seed(opts.seed, 901), opts.threads, mc::Method::kCholesky};
    const mc::ChatterjeeCheck chk = mc::empirical_chatterjee(dx, dy, n_samples, run);
    c.require(chk.holds, "refinement N=12: lhs=" + fmt(chk.lhs) + " - 4se > rhs=" + fmt(chk.rhs));
    c.note("N=12: lhs=" + fmt(chk.lhs) + " rhs=" + fmt(chk.rhs));
  }
  {
    bnd::DTable dx(2);
    dx.set(0, 1, 2.0);
    const bnd::DTable dy(2);
    mc::RunOptions run{sub_seed(opts.seed, 902), opts.threads, mc::Method::kCholesky};
    const mc::ChatterjeeCheck chk = mc::empirical_chatterjee(dx, dy, n_samples, run);
    const double exact = 1.0 / std::sqrt(std::numbers::pi);
    c.require(chk.holds, "N=2: lhs - 4se > rhs");
    c.require(std::abs(chk.lhs - exact) <= 4.0 * chk.lhs_se,
              "N=2 lhs=" + fmt(chk.lhs) + " not within 4se of 1/sqrt(pi)=" + fmt(exact));
    c.require(std::abs(chk.rhs - std::sqrt(2.0 * std::numbers::ln2)) < 1e-12,
              "N=2 rhs != sqrt(2 ln 2)");
    c.note("N=2: lhs=" + fmt(chk.lhs) + " rhs=" + fmt(chk.rhs));
  }
  return {9, "chatterjee_inequality", c.ok, c.detail, 0.0};
}

// ---- criterion 10: i.i.d. normal maxima ---------------------------------------

CriterionResult c10_iid_normals(const Options& opts) {
  Check c;
  const std::size_t n_samples = scaled(1000000, opts.scale);
  for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{10}, std::size_t{100}}) {
    mc::RunOptions run{sub_seed(opts.seed, 1000 + n), opts.threads, mc::Method::kCirculant};
    const mc::IidMaxEstimate est = mc::estimate_max_iid_normals(n, n_samples, run);
    const double target = oracle::expected_max_iid_normals(n);
    c.require(std::abs(est.estimate.mean - target) <= 4.0 * est.estimate.std_err,
              "n=" + std::to_string(n) + ": mean=" + fmt(est.estimate.mean) +
                  " not within 4se of oracle " + fmt(target));
    c.require(est.estimate.mean <= est.bound + 4.0 * est.estimate.std_err,
              "n=" + std::to_string(n) + ": mean exceeds sqrt(2 ln n) + 4se");
  }
  if (c.ok) c.detail = "n in {1,2,10,100} vs quadrature oracle, all below sqrt(2 ln n)";
  return {10, "iid_normal_maxima", c.ok, c.detail, 0.0};
}

// ---- criterion 11: upper-bound dominance over the nested-grid proxy -----------

CriterionResult c11_dominance(const Options& opts) {
  Check c;
  const std::size_t n_samples = scaled(1000000, opts.scale);
  const double alpha = 8.0;  // >= alpha*
  const std::vector<std::pair<double, std::size_t>> cases{{0.2, 16}, {0.3, 16}, {0.4, 32}};
  for (const auto& [h, n] : cases) {
    const HurstParam hp(h);
    mc::RunOptions run{sub_seed(opts.seed, 1100 + n), opts.threads, mc::Method::kCirculant};
    const mc::DeltaProxy proxy = mc::delta_proxy(hp, n, 64 * n, n_samples, run);
    const bnd::BoundReport upper = bnd::delta_upper(hp, n, alpha);
    c.require(upper.valid, "upper bound invalid at h=" + fmt(h) + ", n=" + fmt(double(n)));
    c.require(proxy.proxy <= upper.value + 4.0 * proxy.se,
              "proxy=" + fmt(proxy.proxy) + " exceeds bound " + fmt(upper.value) + " at h=" +
                  fmt(h) + ", n=" + fmt(double(n)));
    c.note("h=" + fmt(h) + ": proxy=" + fmt(proxy.proxy) + " <= " + fmt(upper.value));
  }
  return {11, "upper_bound_dominance", c.ok, c.detail, 0.0};
}

// ---- criterion 12: monotonicity suites ----------------------------------------

CriterionResult c12_monotonicity(const Options& opts) {
  Check c;
  {
    mc::RunOptions run{sub_seed(opts.seed, 1201), opts.threads, mc::Method::kCirculant};
    const mc::CoupledGridMeans g = mc::coupled_grid_means(
        HurstParam(0.3), {16, 64, 256, 1024}, scaled(200000, opts.scale), run);
    c.require(g.monotonicity_violations == 0,
              std::to_string(g.monotonicity_violations) + " per-path monotonicity violations");
    for (std::size_t i = 0; i + 1 < g.estimates.size(); ++i) {
      c.require(g.estimates[i].mean <= g.estimates[i + 1].mean,
                "grid means not nondecreasing at level " + std::to_string(i));
    }
  }
  {
    mc::RunOptions run{sub_seed(opts.seed, 1202), opts.threads, mc::Method::kCirculant};
    const mc::HSweep sweep = mc::coupled_h_sweep({0.1, 0.2, 0.3, 0.4, 0.5}, 256,
                                                 scaled(100000, opts.scale), run);
    for (std::size_t i = 0; i < sweep.adjacent_diffs.size(); ++i) {
      const mc::PairedDiff& d = sweep.adjacent_diffs[i];
      c.require(d.mean >= -4.0 * d.se,
                "M_n not non-increasing between h=" + fmt(sweep.h_values[i]) + " and h=" +
                    fmt(sweep.h_values[i + 1]) + " (paired diff " + fmt(d.mean) + ")");
    }
  }
  if (c.ok) c.detail = "nested grids exact per path; h-sweep non-increasing within 4 SE";
  return {12, "monotonicity", c.ok, c.detail, 0.0};
}

// ---- criterion 13: determinism across worker counts ---------------------------

CriterionResult c13_determinism(const Options& opts) {
  Check c;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "fbmax_determinism";
  fs::create_directories(dir);

  const auto dump = [&](const io::json& j, const fs::path& p) {
    io::write_text_atomic(p, j.dump(2) + "\n");
  };
  const auto read_bytes = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };

  {
    mc::RunOptions one{sub_seed(opts.seed, 1301), 1, mc::Method::kCirculant};
    mc::RunOptions four{one.seed, 4, one.method};
    const auto a = mc::estimate_mn(HurstParam(0.3), 64, 20000, one);
    const auto b = mc::estimate_mn(HurstParam(0.3), 64, 20000, four);
    dump(io::to_json(a), dir / "mn_1.json");
    dump(io::to_json(b), dir / "mn_4.json");
    c.require(read_bytes(dir / "mn_1.json") == read_bytes(dir / "mn_4.json"),
              "estimate_mn output differs between 1 and 4 workers");
  }
  {
    mc::RunOptions one{sub_seed(opts.seed, 1302), 1, mc::Method::kCholesky};
    mc::RunOptions three{one.seed, 3, one.method};
    const auto a = mc::delta_proxy(HurstParam(0.25), 16, 256, 20000, one);
    const auto b = mc::delta_proxy(HurstParam(0.25), 16, 256, 20000, three);
    dump(io::to_json(a), dir / "proxy_1.json");
    dump(io::to_json(b), dir / "proxy_3.json");
    c.require(read_bytes(dir / "proxy_1.json") == read_bytes(dir / "proxy_3.json"),
              "delta_proxy output differs between 1 and 3 workers");
  }
  if (c.ok) c.detail = "byte-identical JSON dumps at 1 vs k workers";
  return {13, "determinism", c.ok, c.detail, 0.0};
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"closed_form", "sampler_law", "calibration", "mechanics",
          "dominance",   "monotonicity", "determinism"};
}

std::vector<int> suite_criteria(const std::string& suite) {
  static const std::map<std::string, std::vector<int>> suites{
      {"closed_form", {1, 2, 3, 4, 5}}, {"sampler_law", {6}},  {"calibration", {7}},
      {"mechanics", {8, 9, 10}},        {"dominance", {11}},   {"monotonicity", {12}},
      {"determinism", {13}},
  };
  const auto it = suites.find(suite);
  if (it == suites.end()) throw std::invalid_argument("unknown suite: " + suite);
  return it->second;
}

std::vector<CriterionResult> run_acceptance(const Options& opts, std::ostream* log) {
  using Fn = std::function<CriterionResult(const Options&)>;
  const std::vector<Fn> criteria{
      c1_constants,  c2_mh_derivation, c3_pickands,    c4_closed_form_oracle,
      c5_series_vs_majorant, c6_sampler_law, c7_calibration, c8_increment_mechanics,
      c9_chatterjee, c10_iid_normals,  c11_dominance,  c12_monotonicity,
      c13_determinism,
  };

  std::vector<int> selected = opts.criteria;
  if (selected.empty()) {
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);
  }

  std::vector<CriterionResult> results;
  for (int id : selected) {
    if (id < 1 || id > static_cast<int>(criteria.size())) {
      throw std::invalid_argument("unknown criterion id: " + std::to_string(id));
    }
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = criteria[static_cast<std::size_t>(id - 1)](opts);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (log != nullptr) {
      char head[64];
      std::snprintf(head, sizeof head, "[%2d] %s %-22s", r.id, r.passed ? "PASS" : "FAIL",
                    r.name.c_str());
      *log << head << " " << r.detail << "  (" << fmt(r.seconds) << " s)\n";
    }
    results.push_back(std::move(r));
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.passed; });
}

}  // namespace fbmax::validate
