#include "fbmax/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "fbmax/random.hpp"
#include "fbmax/sampler.hpp"
#include "fbmax/stats.hpp"

namespace fbmax::mc {

namespace {

constexpr double kZ95 = bounds::constants::kZ95;

// Static contiguous partition of [0, n) over the workers. Every per-sample value
// must land in index-addressed storage so the partition cannot influence results.
template <class MakeState, class Body>
void run_indexed(std::size_t n, int threads, MakeState&& make_state, Body&& body) {
  const int workers = std::max(1, threads);
  if (workers == 1 || n < 2 * static_cast<std::size_t>(workers)) {
    auto state = make_state();
    for (std::size_t i = 0; i < n; ++i) body(state, i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const std::size_t lo = n * static_cast<std::size_t>(w) / workers;
    const std::size_t hi = n * (static_cast<std::size_t>(w) + 1) / workers;
    pool.emplace_back([&, lo, hi]() {
      try {
        auto state = make_state();
        for (std::size_t i = lo; i < hi; ++i) body(state, i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

McEstimate make_estimate(std::span<const double> per_sample, const RunOptions& opts) {
  const SampleStats s = sample_stats(per_sample);
  McEstimate e;
  e.mean = s.mean;
  e.std_err = s.se;
  e.n_samples = s.n;
  e.ci_halfwidth_95 = kZ95 * s.se;
  e.seed = opts.seed;
  e.method = opts.method;
  return e;
}

// Sampler wrapper so estimator bodies are method-agnostic.
struct AnySampler {
  std::unique_ptr<CholeskySampler> chol;
  std::unique_ptr<CirculantSampler> circ;

  AnySampler(const HurstParam& h, const UniformGrid& grid, Method method) {
    if (method == Method::kCholesky) {
      chol = std::make_unique<CholeskySampler>(h, grid);
    } else {
      circ = std::make_unique<CirculantSampler>(h, grid);
    }
  }

  void sample_values(RandomStream& rs, std::span<double> out) {
    if (chol) {
      chol->sample_values(rs, out);
    } else {
      circ->sample_values(rs, out);
    }
  }
};

void require_samples(std::size_t n_samples, std::size_t minimum, const char* op) {
  if (n_samples < minimum) {
    throw std::invalid_argument(std::string(op) + ": needs at least " +
                                std::to_string(minimum) + " samples");
  }
}

}  // namespace

const char* to_string(Method m) {
  return m == Method::kCholesky ? "cholesky" : "circulant";
}

Method method_from_string(const std::string& name) {
  if (name == "cholesky") return Method::kCholesky;
  if (name == "circulant") return Method::kCirculant;
  throw std::invalid_argument("unknown sampling method: " + name);
}

McEstimate estimate_mn(const HurstParam& h, std::size_t n, std::size_t n_samples,
                       const RunOptions& opts) {
  require_samples(n_samples, 100, "estimate_mn");
  const UniformGrid grid(n);
  std::vector<double> maxima(n_samples);

  struct State {
    AnySampler sampler;
    std::vector<double> values;
  };
  run_indexed(
      n_samples, opts.threads,
      [&] { return State{AnySampler(h, grid, opts.method), std::vector<double>(n)}; },
      [&](State& st, std::size_t i) {
        RandomStream rs(opts.seed, i);
        st.sampler.sample_values(rs, st.values);
        maxima[i] = *std::max_element(st.values.begin(), st.values.end());
      });
  return make_estimate(maxima, opts);
}

IncrementEstimate estimate_increment(const HurstParam& h, std::size_t n, std::size_t m,
                                     std::size_t n_samples, const RunOptions& opts) {
  if (n == 0 || m == 0) throw std::invalid_argument("estimate_increment: n, m must be >= 1");
  require_samples(n_samples, 2, "estimate_increment");
  const std::size_t fine_n = n * m;
  const UniformGrid grid(fine_n);
  std::vector<double> fine_max(n_samples);
  std::vector<double> coarse_max(n_samples);

  struct State {
    AnySampler sampler;
    std::vector<double> values;
  };
  run_indexed(
      n_samples, opts.threads,
      [&] { return State{AnySampler(h, grid, opts.method), std::vector<double>(fine_n)}; },
      [&](State& st, std::size_t i) {
        RandomStream rs(opts.seed, i);
        st.sampler.sample_values(rs, st.values);
        fine_max[i] = *std::max_element(st.values.begin(), st.values.end());
        double cm = st.values[m - 1];  // t = 1/n lives at fine index m-1
        for (std::size_t k = 2; k <= n; ++k) cm = std::max(cm, st.values[k * m - 1]);
        coarse_max[i] = cm;
      });

  IncrementEstimate est;
  est.fine = make_estimate(fine_max, opts);
  est.coarse = make_estimate(coarse_max, opts);

  std::vector<double> diffs(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    diffs[i] = fine_max[i] - coarse_max[i];
    if (diffs[i] < 0.0) ++est.coupling_violations;
  }
  const SampleStats d = sample_stats(diffs);
  est.diff_mean = d.mean;
  est.diff_std_err = d.se;
  return est;
}

DeltaProxy delta_proxy(const HurstParam& h, std::size_t n, std::size_t n_ref,
                       std::size_t n_samples, const RunOptions& opts) {
  if (n == 0 || n_ref % n != 0) {
    throw std::invalid_argument("delta_proxy: n_ref must be a positive multiple of n");
  }
  const IncrementEstimate inc = estimate_increment(h, n, n_ref / n, n_samples, opts);
  DeltaProxy p;
  p.proxy = inc.diff_mean;
  p.se = inc.diff_std_err;
  p.coarse = inc.coarse;
  p.fine = inc.fine;
  return p;
}

namespace {

// Factor of the zero-mean Gaussian vector induced by an increment-variance
// table: anchor coordinate 0, Gram G_ij = (d_0i + d_0j - d_ij)/2 over the rest,
// eigendecompose, clamp roundoff negatives. Coordinate 0 stays identically 0;
// expected maxima are unchanged by the anchoring shift.
Eigen::MatrixXd dtable_factor(const bounds::DTable& d) {
  const std::size_t n = d.size();
  if (n == 1) return Eigen::MatrixXd::Zero(1, 1);
  const std::size_t k = n - 1;
  Eigen::MatrixXd gram(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      gram(i, j) = 0.5 * (d.at(0, i + 1) + d.at(0, j + 1) - d.at(i + 1, j + 1));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("empirical_chatterjee: eigendecomposition failed");
  }
  const double max_eig = std::max(eig.eigenvalues().maxCoeff(), 0.0);
  const double floor = -1e-9 * std::max(max_eig, 1.0);
  Eigen::VectorXd scaled(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double lam = eig.eigenvalues()(static_cast<Eigen::Index>(i));
    if (lam < floor) {
      throw std::runtime_error(
          "empirical_chatterjee: increment-variance table is not realizable (Gram has "
          "eigenvalue " + std::to_string(lam) + ")");
    }
    scaled(static_cast<Eigen::Index>(i)) = std::sqrt(std::max(lam, 0.0));
  }
  return eig.eigenvectors() * scaled.asDiagonal();
}

}  // namespace

ChatterjeeCheck empirical_chatterjee(const bounds::DTable& dx, const bounds::DTable& dy,
                                     std::size_t n_samples, const RunOptions& opts) {
  if (dx.size() != dy.size()) {
    throw std::invalid_argument("empirical_chatterjee: table dimensions differ");
  }
  require_samples(n_samples, 2, "empirical_chatterjee");
  const std::size_t n = dx.size();
  const Eigen::MatrixXd fx = dtable_factor(dx);
  const Eigen::MatrixXd fy = dtable_factor(dy);
  const std::size_t k = n > 1 ? n - 1 : 0;

  std::vector<double> gaps(n_samples);
  struct State {
    Eigen::VectorXd z;
    Eigen::VectorXd v;
  };
  run_indexed(
      n_samples, opts.threads,
      [&] {
        return State{Eigen::VectorXd(static_cast<Eigen::Index>(k)),
                     Eigen::VectorXd(static_cast<Eigen::Index>(k))};
      },
      [&](State& st, std::size_t i) {
        RandomStream rs(opts.seed, i);
        for (Eigen::Index j = 0; j < st.z.size(); ++j) st.z(j) = rs.gaussian();
        double max_x = 0.0;  // anchored coordinate
        st.v.noalias() = fx * st.z;
        for (Eigen::Index j = 0; j < st.v.size(); ++j) max_x = std::max(max_x, st.v(j));
        double max_y = 0.0;
        st.v.noalias() = fy * st.z;
        for (Eigen::Index j = 0; j < st.v.size(); ++j) max_y = std::max(max_y, st.v(j));
        gaps[i] = max_x - max_y;
      });

  const SampleStats s = sample_stats(gaps);
  ChatterjeeCheck c;
  c.lhs = std::abs(s.mean);
  c.lhs_se = s.se;
  c.rhs = bounds::chatterjee_bound(dx, dy);
  c.holds = c.lhs - 4.0 * c.lhs_se <= c.rhs;
  return c;
}

IidMaxEstimate estimate_max_iid_normals(std::size_t n, std::size_t n_samples,
                                        const RunOptions& opts) {
  if (n == 0) throw std::invalid_argument("estimate_max_iid_normals: n must be >= 1");
  require_samples(n_samples, 2, "estimate_max_iid_normals");
  std::vector<double> maxima(n_samples);
  run_indexed(
      n_samples, opts.threads, [] { return 0; },
      [&](int&, std::size_t i) {
        RandomStream rs(opts.seed, i);
        double mx = rs.gaussian();
        for (std::size_t k = 1; k < n; ++k) mx = std::max(mx, rs.gaussian());
        maxima[i] = mx;
      });
  IidMaxEstimate out;
  out.estimate = make_estimate(maxima, opts);
  out.bound = std::sqrt(2.0 * std::log(static_cast<double>(n)));
  return out;
}

CoupledGridMeans coupled_grid_means(const HurstParam& h, std::vector<std::size_t> grids,
                                    std::size_t n_samples, const RunOptions& opts) {
  if (grids.empty()) throw std::invalid_argument("coupled_grid_means: no grids");
  for (std::size_t i = 0; i + 1 < grids.size(); ++i) {
    if (grids[i] == 0 || grids[i + 1] % grids[i] != 0) {
      throw std::invalid_argument("coupled_grid_means: grids must form a divisibility chain");
    }
  }
  require_samples(n_samples, 2, "coupled_grid_means");
  const std::size_t n_ref = grids.back();
  const UniformGrid grid(n_ref);
  const std::size_t levels = grids.size();
  std::vector<std::vector<double>> maxima(levels, std::vector<double>(n_samples));
  std::vector<std::size_t> violations_per_sample(n_samples, 0);

  struct State {
    AnySampler sampler;
    std::vector<double> values;
  };
  run_indexed(
      n_samples, opts.threads,
      [&] { return State{AnySampler(h, grid, opts.method), std::vector<double>(n_ref)}; },
      [&](State& st, std::size_t i) {
        RandomStream rs(opts.seed, i);
        st.sampler.sample_values(rs, st.values);
        double prev = -std::numeric_limits<double>::infinity();
        for (std::size_t level = 0; level < levels; ++level) {
          const std::size_t g = grids[level];
          const std::size_t step = n_ref / g;
          double mx = st.values[step - 1];
          for (std::size_t k = 2; k <= g; ++k) mx = std::max(mx, st.values[k * step - 1]);
          maxima[level][i] = mx;
          if (mx < prev) ++violations_per_sample[i];
          prev = mx;
        }
      });

  CoupledGridMeans out;
  out.grids = std::move(grids);
  for (std::size_t level = 0; level < levels; ++level) {
    out.estimates.push_back(make_estimate(maxima[level], opts));
  }
  for (std::size_t v : violations_per_sample) out.monotonicity_violations += v;
  return out;
}

HSweep coupled_h_sweep(const std::vector<double>& h_values, std::size_t n,
                       std::size_t n_samples, const RunOptions& opts) {
  if (h_values.empty()) throw std::invalid_argument("coupled_h_sweep: no H values");
  require_samples(n_samples, 2, "coupled_h_sweep");
  const UniformGrid grid(n);
  const std::size_t levels = h_values.size();
  std::vector<std::vector<double>> maxima(levels, std::vector<double>(n_samples));

  struct State {
    std::vector<AnySampler> samplers;
    std::vector<double> values;
  };
  run_indexed(
      n_samples, opts.threads,
      [&] {
        State st{{}, std::vector<double>(n)};
        st.samplers.reserve(levels);
        for (double hv : h_values) st.samplers.emplace_back(HurstParam(hv), grid, opts.method);
        return st;
      },
      [&](State& st, std::size_t i) {
        // The stream restarts for each H, so every level consumes the identical
        // raw draw sequence.
        for (std::size_t level = 0; level < levels; ++level) {
          RandomStream rs(opts.seed, i);
          st.samplers[level].sample_values(rs, st.values);
          maxima[level][i] = *std::max_element(st.values.begin(), st.values.end());
        }
      });

  HSweep out;
  out.h_values = h_values;
  for (std::size_t level = 0; level < levels; ++level) {
    out.estimates.push_back(make_estimate(maxima[level], opts));
  }
  std::vector<double> diffs(n_samples);
  for (std::size_t level = 0; level + 1 < levels; ++level) {
    for (std::size_t i = 0; i < n_samples; ++i) {
      diffs[i] = maxima[level][i] - maxima[level + 1][i];
    }
    const SampleStats s = sample_stats(diffs);
    out.adjacent_diffs.push_back(PairedDiff{s.mean, s.se});
  }
  return out;
}

std::vector<FbmPath> sample_paths(const HurstParam& h, std::size_t n, std::size_t n_paths,
                                  const RunOptions& opts) {
  const UniformGrid grid(n);
  AnySampler sampler(h, grid, opts.method);
  std::vector<FbmPath> paths;
  paths.reserve(n_paths);
  for (std::size_t i = 0; i < n_paths; ++i) {
    RandomStream rs(opts.seed, i);
    FbmPath p{h, std::vector<double>(n)};
    sampler.sample_values(rs, p.values);
    paths.push_back(std::move(p));
  }
  return paths;
}

}  // namespace fbmax::mc
