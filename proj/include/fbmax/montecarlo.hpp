#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fbmax/bounds.hpp"
#include "fbmax/types.hpp"

namespace fbmax::mc {

enum class Method { kCholesky, kCirculant };

const char* to_string(Method m);
Method method_from_string(const std::string& name);

/// Monte Carlo mean with its sampling error. Estimates are bit-reproducible:
/// sample i draws from RandomStream(seed, i), per-sample statistics land in an
/// index-addressed buffer, and reduction runs in index order regardless of the
/// worker count.
struct McEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  std::size_t n_samples = 0;
  double ci_halfwidth_95 = 0.0;  // 1.959964 * std_err
  std::uint64_t seed = 0;
  Method method = Method::kCirculant;
};

struct RunOptions {
  std::uint64_t seed = 0;
  int threads = 1;
  Method method = Method::kCirculant;
};

/// Coupled coarse/fine maxima from the same paths. The coarse grid is a subset
/// of the fine grid, so per-path fine max >= coarse max exactly;
/// coupling_violations counts paths breaking that (must stay 0).
struct IncrementEstimate {
  McEstimate coarse;
  McEstimate fine;
  double diff_mean = 0.0;
  double diff_std_err = 0.0;
  std::size_t coupling_violations = 0;
};

/// E max_{1<=i<=n} B_{i/n}. Requires n_samples >= 100.
McEstimate estimate_mn(const HurstParam& h, std::size_t n, std::size_t n_samples,
                       const RunOptions& opts);

/// Coarse grid of n points vs fine grid of n*m points, coupled per path.
IncrementEstimate estimate_increment(const HurstParam& h, std::size_t n, std::size_t m,
                                     std::size_t n_samples, const RunOptions& opts);

struct DeltaProxy {
  double proxy = 0.0;  // coupled estimate of M_{n_ref} - M_n; a lower estimate of the true gap
  double se = 0.0;
  McEstimate coarse;
  McEstimate fine;
};

/// Nested-grid proxy for the continuum gap; n_ref must be a multiple of n.
DeltaProxy delta_proxy(const HurstParam& h, std::size_t n, std::size_t n_ref,
                       std::size_t n_samples, const RunOptions& opts);

struct ChatterjeeCheck {
  double lhs = 0.0;  // |E max X - E max Y| estimate (coupled draws)
  double lhs_se = 0.0;
  double rhs = 0.0;  // (gamma ln N)^{1/2}
  bool holds = false;  // lhs - 4 lhs_se <= rhs
};

/// Samples the two Gaussian vectors induced by the increment-variance tables
/// (anchored Gram construction, eigen factorization) and compares the empirical
/// gap of expected maxima against the closed-form bound. Throws when a table is
/// not realizable (Gram not PSD).
ChatterjeeCheck empirical_chatterjee(const bounds::DTable& dx, const bounds::DTable& dy,
                                     std::size_t n_samples, const RunOptions& opts);

struct IidMaxEstimate {
  McEstimate estimate;
  double bound = 0.0;  // sqrt(2 ln n)
};

/// E max of n i.i.d. standard normals.
IidMaxEstimate estimate_max_iid_normals(std::size_t n, std::size_t n_samples,
                                        const RunOptions& opts);

/// Coupled maxima over a divisibility chain of grids (each entry divides the
/// next; the last is the sampling grid). Per-path maxima are nondecreasing
/// along the chain by construction; violations counts exceptions (must be 0).
struct CoupledGridMeans {
  std::vector<std::size_t> grids;
  std::vector<McEstimate> estimates;
  std::size_t monotonicity_violations = 0;
};

CoupledGridMeans coupled_grid_means(const HurstParam& h, std::vector<std::size_t> grids,
                                    std::size_t n_samples, const RunOptions& opts);

struct PairedDiff {
  double mean = 0.0;
  double se = 0.0;
};

/// Grid-maximum estimates across several H values with shared draws per sample
/// index; adjacent_diffs[i] is the paired estimate of mean(h_i) - mean(h_{i+1}).
struct HSweep {
  std::vector<double> h_values;
  std::vector<McEstimate> estimates;
  std::vector<PairedDiff> adjacent_diffs;
};

HSweep coupled_h_sweep(const std::vector<double>& h_values, std::size_t n,
                       std::size_t n_samples, const RunOptions& opts);

/// Sample paths for dumping; path i uses RandomStream(seed, i).
std::vector<FbmPath> sample_paths(const HurstParam& h, std::size_t n, std::size_t n_paths,
                                  const RunOptions& opts);

}  // namespace fbmax::mc
