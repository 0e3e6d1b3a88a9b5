// fbmax: closed-form bounds for the expected maximum of fractional Brownian
// motion on uniform grids, exact samplers, and Monte Carlo validation.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fbmax/bounds.hpp"
#include "fbmax/covariance.hpp"
#include "fbmax/delta_f.hpp"
#include "fbmax/io.hpp"
#include "fbmax/montecarlo.hpp"
#include "fbmax/validate.hpp"
#include "fbmax/version.hpp"

namespace {

namespace bnd = fbmax::bounds;
namespace mc = fbmax::mc;
namespace io = fbmax::io;
using fbmax::HurstParam;

struct GlobalOpts {
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 42;
  int threads = 1;
};

std::string fmt17(double v) { return io::format_double(v); }

void emit(const GlobalOpts& g, const std::string& payload) {
  if (g.out.empty()) {
    std::cout << payload;
  } else {
    io::write_text_atomic(g.out, payload);
  }
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

// ---------------------------------------------------------------- bounds ----

struct BoundsConfig {
  std::vector<double> hs;
  std::vector<std::size_t> ns;
  std::vector<double> alphas{2.0};
  std::vector<std::string> kinds{"upper", "lower", "mn_upper"};
  double lerch_tol = 1e-12;
  // delta_f parameters
  std::string f_kind = "exp";
  double f_a = 1.0;
  double f_p = 2.0;
  double f_delta = 0.0;  // 0 = derive from delta_upper(h, n, alpha)
  double mh_surrogate = 0.0;  // 0 = mh_upper(h)
};

bool kind_uses_grid(bnd::BoundKind k) {
  switch (k) {
    case bnd::BoundKind::kUpperOld:
    case bnd::BoundKind::kUpper:
    case bnd::BoundKind::kUpperSeries:
    case bnd::BoundKind::kLower:
    case bnd::BoundKind::kMnUpper:
    case bnd::BoundKind::kDeltaF:
      return true;
    default:
      return false;
  }
}

bool kind_uses_alpha(bnd::BoundKind k) {
  return k == bnd::BoundKind::kUpper || k == bnd::BoundKind::kUpperSeries ||
         k == bnd::BoundKind::kDeltaF;
}

bnd::BoundReport evaluate_kind(const BoundsConfig& cfg, bnd::BoundKind kind, double h,
                               std::size_t n, double alpha) {
  const HurstParam hp(h);
  switch (kind) {
    case bnd::BoundKind::kUpperOld:
      return bnd::delta_upper_old(hp, n);
    case bnd::BoundKind::kUpper:
      return bnd::delta_upper(hp, n, alpha);
    case bnd::BoundKind::kUpperSeries:
      return bnd::delta_upper_lerch(hp, n, alpha, cfg.lerch_tol);
    case bnd::BoundKind::kLower:
      return bnd::delta_lower(hp, n);
    case bnd::BoundKind::kMnUpper:
      return bnd::mn_upper(hp, n);
    case bnd::BoundKind::kMhUpper:
      return bnd::mh_upper(hp);
    case bnd::BoundKind::kMhLower: {
      bnd::BoundReport r;
      r.kind = bnd::BoundKind::kMhLower;
      r.value = bnd::mh_lower(hp);
      r.valid = true;
      return r;
    }
    case bnd::BoundKind::kPickandsOurs: {
      bnd::BoundReport r;
      r.kind = kind;
      r.value = bnd::pickands_ours(hp);
      r.valid = true;
      return r;
    }
    case bnd::BoundKind::kPickandsShao: {
      bnd::BoundReport r;
      r.kind = kind;
      r.value = bnd::pickands_shao(hp);
      r.valid = true;
      return r;
    }
    case bnd::BoundKind::kPickandsFromMh: {
      bnd::BoundReport r;
      r.kind = kind;
      const double mh = cfg.mh_surrogate > 0.0 ? cfg.mh_surrogate : bnd::mh_upper(hp).value;
      r.value = bnd::pickands_from_mh(hp, mh);
      r.valid = true;
      r.notes.push_back("mh_bound=" + fmt17(mh));
      return r;
    }
    case bnd::BoundKind::kDeltaF: {
      bnd::BoundReport r;
      r.kind = kind;
      const bnd::BoundReport upper = bnd::delta_upper(hp, n, alpha);
      const double delta = cfg.f_delta > 0.0 ? cfg.f_delta : upper.value;
      const double mh = cfg.mh_surrogate > 0.0 ? cfg.mh_surrogate : bnd::mh_upper(hp).value;
      r.notes.push_back("delta=" + fmt17(delta));
      r.notes.push_back("mh_surrogate=" + fmt17(mh));
      r.notes.push_back("f=" + cfg.f_kind);
      bool preconditions = delta > 0.0;
      if (cfg.f_kind == "exp") {
        preconditions = preconditions && delta < 1.0;
        r.value = preconditions ? bnd::delta_f_exp(cfg.f_a, delta, mh) : 0.0;
      } else {
        preconditions = preconditions && delta < std::exp(-0.5 * cfg.f_p);
        r.value = preconditions ? bnd::delta_f_pow(cfg.f_p, delta, mh) : 0.0;
      }
      r.conditions.push_back({"delta in the admissible range", 0.0, delta, preconditions});
      if (cfg.f_delta <= 0.0) {
        r.conditions.push_back({"delta source (delta_upper) valid", 1.0,
                                upper.valid ? 1.0 : 0.0, upper.valid});
      }
      r.valid = preconditions && (cfg.f_delta > 0.0 || upper.valid);
      return r;
    }
  }
  throw std::logic_error("unhandled bound kind");
}

int cmd_bounds(const GlobalOpts& g, const BoundsConfig& cfg) {
  std::vector<bnd::BoundKind> kinds;
  for (const auto& name : cfg.kinds) kinds.push_back(bnd::bound_kind_from_string(name));
  const bool needs_grid =
      std::any_of(kinds.begin(), kinds.end(), [](bnd::BoundKind k) { return kind_uses_grid(k); });
  if (cfg.hs.empty()) throw CLI::ValidationError("bounds", "--h grid is empty");
  if (needs_grid && cfg.ns.empty()) {
    throw CLI::ValidationError("bounds", "--n grid is empty but a grid bound was requested");
  }
  if (cfg.alphas.empty()) throw CLI::ValidationError("bounds", "--alpha grid is empty");

  io::ConfigEcho echo{{"command", "bounds"},
                      {"h", join([&] {
                         std::vector<std::string> v;
                         for (double h : cfg.hs) v.push_back(fmt17(h));
                         return v;
                       }(), " ")},
                      {"n", join([&] {
                         std::vector<std::string> v;
                         for (auto n : cfg.ns) v.push_back(std::to_string(n));
                         return v;
                       }(), " ")},
                      {"alpha", join([&] {
                         std::vector<std::string> v;
                         for (double a : cfg.alphas) v.push_back(fmt17(a));
                         return v;
                       }(), " ")},
                      {"kind", join(cfg.kinds, " ")},
                      {"format", g.format},
                      {"seed", std::to_string(g.seed)}};

  std::string csv = io::csv_header_comment(echo);
  csv += "h,n,alpha,kind,value,valid,conditions_failed\n";
  io::json rows = io::json::array();

  const auto add_row = [&](double h, std::optional<std::size_t> n, std::optional<double> alpha,
                           const bnd::BoundReport& r) {
    csv += fmt17(h) + "," + (n ? std::to_string(*n) : "") + "," +
           (alpha ? fmt17(*alpha) : "") + "," + bnd::to_string(r.kind) + "," + fmt17(r.value) +
           "," + (r.valid ? "true" : "false") + "," + join(r.failed_conditions(), ";") + "\n";
    io::json jr{{"h", h}};
    jr["n"] = n ? io::json(*n) : io::json(nullptr);
    jr["alpha"] = alpha ? io::json(*alpha) : io::json(nullptr);
    jr["report"] = io::to_json(r);
    rows.push_back(jr);
  };

  for (double h : cfg.hs) {
    for (bnd::BoundKind kind : kinds) {
      if (!kind_uses_grid(kind)) {
        add_row(h, std::nullopt, std::nullopt, evaluate_kind(cfg, kind, h, 0, 0.0));
      }
    }
    for (std::size_t n : cfg.ns) {
      for (bnd::BoundKind kind : kinds) {
        if (kind_uses_grid(kind) && !kind_uses_alpha(kind)) {
          add_row(h, n, std::nullopt, evaluate_kind(cfg, kind, h, n, 0.0));
        }
      }
      for (double alpha : cfg.alphas) {
        for (bnd::BoundKind kind : kinds) {
          if (kind_uses_alpha(kind)) {
            add_row(h, n, alpha, evaluate_kind(cfg, kind, h, n, alpha));
          }
        }
      }
    }
  }

  if (g.format == "json") {
    io::json out{{"config", io::config_json(echo)}, {"rows", rows}};
    emit(g, out.dump(2) + "\n");
  } else {
    emit(g, csv);
  }
  return 0;
}

// -------------------------------------------------------------- validity ----

int cmd_validity(const GlobalOpts& g, const std::vector<double>& hs,
                 const std::vector<double>& alphas, bool alpha_star_only) {
  const double astar = bnd::alpha_star(1e-10);
  if (!alpha_star_only && (hs.empty() || alphas.empty())) {
    throw CLI::ValidationError("validity", "--h and --alpha are required (or use --alpha-star)");
  }

  io::ConfigEcho echo{{"command", "validity"}, {"format", g.format},
                      {"alpha_star", fmt17(astar)}};
  std::string csv = io::csv_header_comment(echo);
  io::json out{{"config", io::config_json(echo)}, {"alpha_star", astar}};

  if (alpha_star_only) {
    csv += "alpha_star\n" + fmt17(astar) + "\n";
    emit(g, g.format == "json" ? out.dump(2) + "\n" : csv);
    return 0;
  }

  csv += "h,alpha,n_lower,n_upper,feasible_count,feasible_integers,truncated,published_interval\n";
  io::json rows = io::json::array();
  for (double h : hs) {
    for (double alpha : alphas) {
      const bnd::ValidityRegion r = bnd::validity_region(HurstParam(h), alpha);
      std::vector<std::string> ints;
      for (long long v : r.feasible_integers) ints.push_back(std::to_string(v));
      csv += fmt17(h) + "," + fmt17(alpha) + "," + fmt17(r.n_lower) + "," + fmt17(r.n_upper) +
             "," + std::to_string(r.feasible_integers.size()) + "," + join(ints, ";") + "," +
             (r.truncated ? "true" : "false") + "," + r.published_interval + "\n";
      io::json jr = io::to_json(r);
      jr["h"] = h;
      jr["alpha"] = alpha;
      rows.push_back(jr);
    }
  }
  out["rows"] = rows;
  emit(g, g.format == "json" ? out.dump(2) + "\n" : csv);
  return 0;
}

// -------------------------------------------------------------- estimate ----

struct EstimateConfig {
  double h = 0.5;
  std::size_t n = 16;
  std::size_t m = 2;
  std::size_t n_ref = 256;
  std::size_t samples = 100000;
  std::string method = "circulant";
  std::string chatterjee_case = "refinement";
  std::string dump_paths;
  std::size_t dump_count = 10;
};

int cmd_estimate(const GlobalOpts& g, const std::string& estimator, const EstimateConfig& cfg) {
  mc::RunOptions run{g.seed, g.threads, mc::method_from_string(cfg.method)};

  io::ConfigEcho echo{{"command", "estimate"},       {"estimator", estimator},
                      {"h", fmt17(cfg.h)},           {"n", std::to_string(cfg.n)},
                      {"m", std::to_string(cfg.m)},  {"n_ref", std::to_string(cfg.n_ref)},
                      {"samples", std::to_string(cfg.samples)},
                      {"method", cfg.method},        {"seed", std::to_string(g.seed)},
                      {"format", g.format}};

  const auto t0 = std::chrono::steady_clock::now();
  io::json record;
  double headline = 0.0;
  double headline_se = 0.0;

  if (estimator == "mn") {
    const mc::McEstimate e = mc::estimate_mn(HurstParam(cfg.h), cfg.n, cfg.samples, run);
    record = io::to_json(e);
    headline = e.mean;
    headline_se = e.std_err;
  } else if (estimator == "increment") {
    const mc::IncrementEstimate e =
        mc::estimate_increment(HurstParam(cfg.h), cfg.n, cfg.m, cfg.samples, run);
    record = io::to_json(e);
    headline = e.diff_mean;
    headline_se = e.diff_std_err;
  } else if (estimator == "delta_proxy") {
    const mc::DeltaProxy e =
        mc::delta_proxy(HurstParam(cfg.h), cfg.n, cfg.n_ref, cfg.samples, run);
    record = io::to_json(e);
    headline = e.proxy;
    headline_se = e.se;
  } else if (estimator == "iid_normals") {
    const mc::IidMaxEstimate e = mc::estimate_max_iid_normals(cfg.n, cfg.samples, run);
    record = io::to_json(e);
    headline = e.estimate.mean;
    headline_se = e.estimate.std_err;
  } else if (estimator == "chatterjee") {
    bnd::DTable dx(2), dy(2);
    if (cfg.chatterjee_case == "refinement") {
      auto tables = bnd::refinement_dtables(HurstParam(cfg.h), cfg.n, cfg.m);
      dx = std::move(tables.first);
      dy = std::move(tables.second);
    } else if (cfg.chatterjee_case == "iid_pair") {
      dx.set(0, 1, 2.0);  // two i.i.d. unit normals vs a degenerate constant pair
    } else {
      throw CLI::ValidationError("estimate", "unknown chatterjee case " + cfg.chatterjee_case);
    }
    const mc::ChatterjeeCheck e = mc::empirical_chatterjee(dx, dy, cfg.samples, run);
    record = io::to_json(e);
    record["n_vector"] = dx.size();
    headline = e.lhs;
    headline_se = e.lhs_se;
  } else {
    throw CLI::ValidationError("estimate", "unknown estimator " + estimator);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "estimate " << estimator << ": " << seconds << " s, "
            << fmt17(static_cast<double>(cfg.samples) / std::max(seconds, 1e-9))
            << " samples/s\n";

  if (!cfg.dump_paths.empty()) {
    const auto paths =
        mc::sample_paths(HurstParam(cfg.h), estimator == "increment" ? cfg.n * cfg.m : cfg.n,
                         cfg.dump_count, run);
    io::write_text_atomic(cfg.dump_paths, io::paths_to_csv(paths, echo));
  }

  if (g.format == "json") {
    io::json out{{"config", io::config_json(echo)}, {"estimate", record}};
    emit(g, out.dump(2) + "\n");
  } else {
    std::string csv = io::csv_header_comment(echo);
    csv += "h,n,estimator,mean,std_err,n_samples,seed\n";
    csv += fmt17(cfg.h) + "," + std::to_string(cfg.n) + "," + estimator + "," +
           fmt17(headline) + "," + fmt17(headline_se) + "," + std::to_string(cfg.samples) +
           "," + std::to_string(g.seed) + "\n";
    emit(g, csv);
  }
  return 0;
}

// -------------------------------------------------------------- validate ----

int cmd_validate(const GlobalOpts& g, const std::string& suite, std::vector<int> criteria,
                 double scale, double mh_coef) {
  fbmax::validate::Options opts;
  opts.scale = scale;
  opts.seed = g.seed;
  opts.threads = g.threads;
  opts.mh_upper_coef = mh_coef;
  if (!suite.empty()) {
    opts.criteria = fbmax::validate::suite_criteria(suite);
  } else {
    opts.criteria = std::move(criteria);
  }

  // keep stdout clean when the JSON report itself goes to stdout
  const bool json_to_stdout = g.format == "json" && g.out.empty();
  const auto results =
      fbmax::validate::run_acceptance(opts, json_to_stdout ? nullptr : &std::cout);

  if (!g.out.empty() || g.format == "json") {
    io::ConfigEcho echo{{"command", "validate"},
                        {"suite", suite.empty() ? "all" : suite},
                        {"scale", fmt17(scale)},
                        {"seed", std::to_string(g.seed)}};
    std::string payload;
    if (g.format == "json") {
      io::json rows = io::json::array();
      for (const auto& r : results) {
        rows.push_back(io::json{{"id", r.id},
                                {"name", r.name},
                                {"passed", r.passed},
                                {"detail", r.detail},
                                {"seconds", r.seconds}});
      }
      io::json out{{"config", io::config_json(echo)}, {"criteria", rows}};
      payload = out.dump(2) + "\n";
    } else {
      payload = io::csv_header_comment(echo) + "id,name,passed,seconds,detail\n";
      for (const auto& r : results) {
        payload += std::to_string(r.id) + "," + r.name + "," +
                   (r.passed ? "true" : "false") + "," + fmt17(r.seconds) + "," +
                   io::csv_escape(r.detail) + "\n";
      }
    }
    if (!g.out.empty()) {
      io::write_text_atomic(g.out, payload);
    } else if (json_to_stdout) {
      std::cout << payload;
    }
  }
  return fbmax::validate::all_passed(results) ? 0 : 1;
}

// ---------------------------------------------------------------- report ----

struct ReportConfig {
  std::string series = "pickands";
  double h = 0.25;
  double alpha = 2.0;
  std::size_t n = 16;
  double h_min = 0.05;
  double h_max = 0.5;
  double h_step = 0.05;
  std::vector<std::size_t> n_list{16, 32, 64, 128, 256};
  std::size_t samples = 20000;
  std::string method = "circulant";
  std::string in;
};

int cmd_report(const GlobalOpts& g, const ReportConfig& cfg) {
  io::ConfigEcho echo{{"command", "report"}, {"series", cfg.series}, {"format", g.format},
                      {"seed", std::to_string(g.seed)}};
  std::string csv;
  io::json rows = io::json::array();

  if (cfg.series == "pickands") {
    echo.push_back({"h_min", fmt17(cfg.h_min)});
    echo.push_back({"h_max", fmt17(cfg.h_max)});
    echo.push_back({"h_step", fmt17(cfg.h_step)});
    csv = io::csv_header_comment(echo) + "h,pickands_ours,pickands_shao,ratio\n";
    for (int i = 0;; ++i) {
      const double h = cfg.h_min + i * cfg.h_step;
      if (h > cfg.h_max + 1e-12) break;
      const double ours = bnd::pickands_ours(HurstParam(h));
      const double shao = bnd::pickands_shao(HurstParam(h));
      csv += fmt17(h) + "," + fmt17(ours) + "," + fmt17(shao) + "," + fmt17(ours / shao) + "\n";
      rows.push_back(io::json{{"h", h}, {"pickands_ours", ours}, {"pickands_shao", shao},
                              {"ratio", ours / shao}});
    }
  } else if (cfg.series == "bound-vs-n") {
    echo.push_back({"h", fmt17(cfg.h)});
    echo.push_back({"alpha", fmt17(cfg.alpha)});
    csv = io::csv_header_comment(echo) +
          "n,upper,upper_valid,upper_series,lower,upper_old,upper_old_valid,mn_upper\n";
    const HurstParam hp(cfg.h);
    for (std::size_t n : cfg.n_list) {
      const auto upper = bnd::delta_upper(hp, n, cfg.alpha);
      const auto series = bnd::delta_upper_lerch(hp, n, cfg.alpha);
      const auto lower = bnd::delta_lower(hp, n);
      const auto old = bnd::delta_upper_old(hp, n);
      const auto mn = bnd::mn_upper(hp, n);
      csv += std::to_string(n) + "," + fmt17(upper.value) + "," +
             (upper.valid ? "true" : "false") + "," + fmt17(series.value) + "," +
             fmt17(lower.value) + "," + fmt17(old.value) + "," +
             (old.valid ? "true" : "false") + "," + fmt17(mn.value) + "\n";
      rows.push_back(io::json{{"n", n},
                              {"upper", io::to_json(upper)},
                              {"upper_series", io::to_json(series)},
                              {"lower", io::to_json(lower)},
                              {"upper_old", io::to_json(old)},
                              {"mn_upper", io::to_json(mn)}});
    }
  } else if (cfg.series == "bound-vs-h") {
    echo.push_back({"n", std::to_string(cfg.n)});
    echo.push_back({"alpha", fmt17(cfg.alpha)});
    csv = io::csv_header_comment(echo) + "h,upper,upper_valid,lower,mh_lower,mh_upper,mn_upper\n";
    for (int i = 0;; ++i) {
      const double h = cfg.h_min + i * cfg.h_step;
      if (h > cfg.h_max + 1e-12) break;
      const HurstParam hp(h);
      const auto upper = bnd::delta_upper(hp, cfg.n, cfg.alpha);
      const auto lower = bnd::delta_lower(hp, cfg.n);
      csv += fmt17(h) + "," + fmt17(upper.value) + "," + (upper.valid ? "true" : "false") +
             "," + fmt17(lower.value) + "," + fmt17(bnd::mh_lower(hp)) + "," +
             fmt17(bnd::mh_upper(hp).value) + "," + fmt17(bnd::mn_upper(hp, cfg.n).value) +
             "\n";
      rows.push_back(io::json{{"h", h},
                              {"upper", io::to_json(upper)},
                              {"lower", io::to_json(lower)},
                              {"mh_lower", bnd::mh_lower(hp)},
                              {"mh_upper", io::to_json(bnd::mh_upper(hp))},
                              {"mn_upper", io::to_json(bnd::mn_upper(hp, cfg.n))}});
    }
  } else if (cfg.series == "mc-mn") {
    echo.push_back({"h", fmt17(cfg.h)});
    echo.push_back({"samples", std::to_string(cfg.samples)});
    echo.push_back({"method", cfg.method});
    echo.push_back({"seed", std::to_string(g.seed)});
    csv = io::csv_header_comment(echo) + "n,y,y_err\n";
    mc::RunOptions run{g.seed, g.threads, mc::method_from_string(cfg.method)};
    for (std::size_t n : cfg.n_list) {
      const mc::McEstimate e = mc::estimate_mn(HurstParam(cfg.h), n, cfg.samples, run);
      csv += std::to_string(n) + "," + fmt17(e.mean) + "," + fmt17(e.std_err) + "\n";
      rows.push_back(io::json{{"n", n}, {"y", e.mean}, {"y_err", e.std_err}});
    }
  } else if (cfg.series == "from-sweep") {
    std::ifstream in(cfg.in);
    if (!in) throw CLI::ValidationError("report", "cannot open sweep file " + cfg.in);
    // pivot a bounds sweep (h,n,alpha,kind,value,...) to one column per kind
    std::map<std::string, std::map<std::string, std::string>> table;  // key -> kind -> value
    std::vector<std::string> key_order;
    std::vector<std::string> kind_order;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line.rfind("h,", 0) == 0) continue;
      std::vector<std::string> fields;
      std::stringstream ss(line);
      std::string field;
      while (std::getline(ss, field, ',')) fields.push_back(field);
      if (fields.size() < 5) continue;
      const std::string key = fields[0] + "," + fields[1] + "," + fields[2];
      if (table.find(key) == table.end()) key_order.push_back(key);
      if (std::find(kind_order.begin(), kind_order.end(), fields[3]) == kind_order.end()) {
        kind_order.push_back(fields[3]);
      }
      table[key][fields[3]] = fields[4];
    }
    if (key_order.empty()) {
      throw CLI::ValidationError("report", "sweep file " + cfg.in + " has no data rows");
    }
    echo.push_back({"in", cfg.in});
    csv = io::csv_header_comment(echo) + "h,n,alpha";
    for (const auto& k : kind_order) csv += "," + k;
    csv += "\n";
    for (const auto& key : key_order) {
      csv += key;
      for (const auto& kind : kind_order) {
        const auto& kv = table[key];
        const auto it = kv.find(kind);
        csv += "," + (it == kv.end() ? std::string() : it->second);
      }
      csv += "\n";
      io::json jr{{"key", key}};
      for (const auto& [kind, value] : table[key]) jr[kind] = value;
      rows.push_back(jr);
    }
  } else {
    throw CLI::ValidationError("report", "unknown series " + cfg.series);
  }

  if (g.format == "json") {
    io::json out{{"config", io::config_json(echo)}, {"rows", rows}};
    emit(g, out.dump(2) + "\n");
  } else {
    emit(g, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds and Monte Carlo validation for the expected maximum of fractional "
               "Brownian motion on uniform grids"};
  app.set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  app.set_version_flag("--version", fbmax::kVersion);
  app.set_config("--config", "", "Key-value config file; command line flags take precedence");
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", g.seed, "Master seed (64-bit)");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);

  // bounds
  BoundsConfig bc;
  CLI::App* bounds_cmd = app.add_subcommand("bounds", "Evaluate closed-form bounds on a grid");
  bounds_cmd->add_option("--h", bc.hs, "Hurst parameter grid")->required();
  bounds_cmd->add_option("--n", bc.ns, "Grid sizes");
  bounds_cmd->add_option("--alpha", bc.alphas, "Alpha grid");
  bounds_cmd->add_option("--kind", bc.kinds, "Bound kinds")->delimiter(',');
  bounds_cmd->add_option("--lerch-tol", bc.lerch_tol, "Series truncation tolerance");
  bounds_cmd->add_option("--f-kind", bc.f_kind, "delta_f function family")
      ->check(CLI::IsMember({"exp", "pow"}));
  bounds_cmd->add_option("--f-a", bc.f_a, "delta_f exponential rate");
  bounds_cmd->add_option("--f-p", bc.f_p, "delta_f power");
  bounds_cmd->add_option("--f-delta", bc.f_delta, "delta_f gap (default: delta_upper value)");
  bounds_cmd->add_option("--mh-surrogate", bc.mh_surrogate,
                         "Expected-maximum surrogate (default: mh_upper)");

  // validity
  std::vector<double> vh;
  std::vector<double> valpha;
  bool alpha_star_only = false;
  CLI::App* validity_cmd =
      app.add_subcommand("validity", "Recompute the simultaneous-validity region");
  validity_cmd->add_option("--h", vh, "Hurst parameter grid");
  validity_cmd->add_option("--alpha", valpha, "Alpha grid");
  validity_cmd->add_flag("--alpha-star", alpha_star_only, "Print only the alpha* root");

  // estimate
  EstimateConfig ec;
  CLI::App* estimate_cmd = app.add_subcommand("estimate", "Run a Monte Carlo estimator");
  estimate_cmd->require_subcommand(1);
  std::vector<CLI::App*> estimators;
  for (const char* name : {"mn", "increment", "delta_proxy", "iid_normals", "chatterjee"}) {
    CLI::App* sub = estimate_cmd->add_subcommand(name);
    sub->add_option("--h", ec.h, "Hurst parameter");
    sub->add_option("--n", ec.n, "Grid size / vector length");
    sub->add_option("--m", ec.m, "Refinement factor");
    sub->add_option("--n-ref", ec.n_ref, "Reference grid size");
    sub->add_option("--samples", ec.samples, "Sample count");
    sub->add_option("--method", ec.method, "Sampling method")
        ->check(CLI::IsMember({"cholesky", "circulant"}));
    sub->add_option("--case", ec.chatterjee_case, "Chatterjee construction")
        ->check(CLI::IsMember({"refinement", "iid_pair"}));
    sub->add_option("--dump-paths", ec.dump_paths, "Dump sampled paths to this CSV file");
    sub->add_option("--dump-count", ec.dump_count, "How many paths to dump");
    estimators.push_back(sub);
  }

  // validate
  std::string suite;
  std::vector<int> criteria;
  double scale = 1.0;
  double mh_coef = 0.0;
  CLI::App* validate_cmd = app.add_subcommand("validate", "Run the validation suite");
  validate_cmd->add_option("--suite", suite, "Criteria subset")
      ->check(CLI::IsMember(fbmax::validate::suite_names()));
  validate_cmd->add_option("--criteria", criteria, "Criterion ids (default: all)");
  validate_cmd->add_option("--scale", scale, "Sample-count multiplier")
      ->check(CLI::PositiveNumber);
  validate_cmd->add_option("--mh-upper-coef", mh_coef,
                           "Override the 1.695 coefficient (perturbation testing)");

  // report
  ReportConfig rc;
  CLI::App* report_cmd = app.add_subcommand("report", "Emit plot-ready series");
  report_cmd->add_option("--series", rc.series, "Series to produce")
      ->check(CLI::IsMember({"pickands", "bound-vs-n", "bound-vs-h", "mc-mn", "from-sweep"}));
  report_cmd->add_option("--h", rc.h, "Hurst parameter");
  report_cmd->add_option("--alpha", rc.alpha, "Alpha");
  report_cmd->add_option("--n", rc.n, "Grid size");
  report_cmd->add_option("--h-min", rc.h_min, "Sweep start");
  report_cmd->add_option("--h-max", rc.h_max, "Sweep end");
  report_cmd->add_option("--h-step", rc.h_step, "Sweep step");
  report_cmd->add_option("--n-list", rc.n_list, "Grid sizes")->delimiter(',');
  report_cmd->add_option("--samples", rc.samples, "Sample count for mc series");
  report_cmd->add_option("--method", rc.method, "Sampling method")
      ->check(CLI::IsMember({"cholesky", "circulant"}));
  report_cmd->add_option("--in", rc.in, "Existing bounds sweep to tidy");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bounds_cmd->parsed()) return cmd_bounds(g, bc);
    if (validity_cmd->parsed()) return cmd_validity(g, vh, valpha, alpha_star_only);
    if (estimate_cmd->parsed()) {
      for (CLI::App* sub : estimators) {
        if (sub->parsed()) return cmd_estimate(g, sub->get_name(), ec);
      }
    }
    if (validate_cmd->parsed()) return cmd_validate(g, suite, criteria, scale, mh_coef);
    if (report_cmd->parsed()) return cmd_report(g, rc);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
