#include "fbmax/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <fftw3.h>

#include "fbmax/covariance.hpp"

namespace fbmax {

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t embedding_size_for(std::size_t n) {
  std::size_t m = 2;
  while (m < 2 * (n - 1)) m *= 2;
  return m;
}

}  // namespace

CholeskySampler::CholeskySampler(HurstParam h, UniformGrid grid, std::size_t max_n)
    : h_(h), grid_(grid) {
  const std::size_t n = grid_.size();
  if (n > max_n) {
    throw std::invalid_argument("CholeskySampler: n = " + std::to_string(n) +
                                " exceeds the factorization guard " + std::to_string(max_n));
  }
  const CovMatrix cov = cov_matrix(h_, grid_);
  Eigen::MatrixXd mat(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) mat(i, j) = cov.at(i, j);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(mat);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("CholeskySampler: covariance factorization failed for H=" +
                             std::to_string(h_.value()) + ", n=" + std::to_string(n) +
                             " (matrix not numerically positive definite)");
  }
  Eigen::MatrixXd lower = llt.matrixL();
  factor_.resize(n * (n + 1) / 2);
  std::size_t off = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) factor_[off++] = lower(i, j);
  }
  z_.resize(n);
}

void CholeskySampler::sample_values(RandomStream& rs, std::span<double> out) {
  const std::size_t n = grid_.size();
  if (out.size() != n) throw std::invalid_argument("sample_values: output size mismatch");
  rs.gaussian(z_);
  std::size_t off = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= i; ++j) acc += factor_[off + j] * z_[j];
    out[i] = acc;
    off += i + 1;
  }
}

FbmPath CholeskySampler::sample(RandomStream& rs) {
  FbmPath path{h_, std::vector<double>(grid_.size())};
  sample_values(rs, path.values);
  return path;
}

CirculantSpectrum circulant_spectrum(const HurstParam& h, const UniformGrid& grid) {
  CirculantSpectrum s;
  s.n = grid.size();
  if (s.n == 1) {
    s.embedding_size = 0;
    s.eigenvalues = {1.0};  // single increment of variance (1/n)^{2H} = 1
    s.min_eigenvalue = s.max_eigenvalue = 1.0;
    s.usable = true;
    return s;
  }
  const std::size_t m = embedding_size_for(s.n);
  s.embedding_size = m;

  std::vector<double> row(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t lag = std::min(k, m - k);
    row[k] = fgn_autocovariance(h, s.n, lag);
  }

  double* in = nullptr;
  fftw_complex* out = nullptr;
  fftw_plan plan = nullptr;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    in = fftw_alloc_real(m);
    out = fftw_alloc_complex(m / 2 + 1);
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(m), in, out, FFTW_ESTIMATE);
  }
  if (plan == nullptr) {
    fftw_free(in);
    fftw_free(out);
    throw std::runtime_error("circulant_spectrum: FFT plan creation failed");
  }
  std::copy(row.begin(), row.end(), in);
  fftw_execute(plan);

  s.eigenvalues.resize(m / 2 + 1);
  for (std::size_t k = 0; k <= m / 2; ++k) s.eigenvalues[k] = out[k][0];
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
    fftw_free(in);
    fftw_free(out);
  }

  const auto [mn, mx] = std::minmax_element(s.eigenvalues.begin(), s.eigenvalues.end());
  s.min_eigenvalue = *mn;
  s.max_eigenvalue = *mx;
  const double floor = -CirculantSpectrum::kNegativeTol * std::max(s.max_eigenvalue, 0.0);
  s.usable = s.min_eigenvalue >= floor;
  if (s.usable) {
    for (double v : s.eigenvalues) {
      if (v < 0.0) ++s.clamped;
    }
  }
  return s;
}

struct CirculantSampler::Fft {
  std::size_t m = 0;
  fftw_complex* in = nullptr;
  double* out = nullptr;
  fftw_plan plan = nullptr;

  explicit Fft(std::size_t m_) : m(m_) {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    in = fftw_alloc_complex(m / 2 + 1);
    out = fftw_alloc_real(m);
    plan = fftw_plan_dft_c2r_1d(static_cast<int>(m), in, out, FFTW_ESTIMATE);
    if (plan == nullptr) {
      fftw_free(in);
      fftw_free(out);
      throw std::runtime_error("CirculantSampler: FFT plan creation failed");
    }
  }

  ~Fft() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    if (plan != nullptr) fftw_destroy_plan(plan);
    if (in != nullptr) fftw_free(in);
    if (out != nullptr) fftw_free(out);
  }

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;
};

CirculantSampler::CirculantSampler(HurstParam h, UniformGrid grid)
    : CirculantSampler(h, grid, circulant_spectrum(h, grid)) {}

CirculantSampler::CirculantSampler(HurstParam h, UniformGrid grid, CirculantSpectrum spectrum)
    : h_(h), grid_(grid), spectrum_(std::move(spectrum)) {
  const std::size_t n = grid_.size();
  if (!spectrum_.usable) {
    fallback_ = std::make_unique<CholeskySampler>(h_, grid_);
    return;
  }
  if (n == 1) {
    g_.resize(1);
    return;
  }
  const std::size_t m = spectrum_.embedding_size;
  coef_.resize(m / 2 + 1);
  for (std::size_t k = 0; k <= m / 2; ++k) {
    const double lam = std::max(spectrum_.eigenvalues[k], 0.0);
    const bool paired = k != 0 && k != m / 2;
    coef_[k] = std::sqrt(lam / static_cast<double>(m) * (paired ? 0.5 : 1.0));
  }
  fft_ = std::make_unique<Fft>(m);
  g_.resize(m);
}

CirculantSampler::~CirculantSampler() = default;
CirculantSampler::CirculantSampler(CirculantSampler&&) noexcept = default;
CirculantSampler& CirculantSampler::operator=(CirculantSampler&&) noexcept = default;

std::size_t CirculantSampler::gaussian_count() const {
  if (fallback_ != nullptr) return grid_.size();
  if (grid_.size() == 1) return 1;
  return spectrum_.embedding_size;
}

void CirculantSampler::transform(std::span<const double> g, std::span<double> increments) {
  if (fallback_ != nullptr) {
    throw std::logic_error("CirculantSampler::transform: unavailable in fallback mode");
  }
  const std::size_t n = grid_.size();
  if (increments.size() != n) {
    throw std::invalid_argument("transform: increments size mismatch");
  }
  if (g.size() != gaussian_count()) {
    throw std::invalid_argument("transform: gaussian count mismatch");
  }
  if (n == 1) {
    increments[0] = g[0];
    return;
  }
  const std::size_t m = spectrum_.embedding_size;
  fftw_complex* in = fft_->in;
  in[0][0] = coef_[0] * g[0];
  in[0][1] = 0.0;
  for (std::size_t k = 1; k < m / 2; ++k) {
    in[k][0] = coef_[k] * g[2 * k - 1];
    in[k][1] = coef_[k] * g[2 * k];
  }
  in[m / 2][0] = coef_[m / 2] * g[m - 1];
  in[m / 2][1] = 0.0;
  fftw_execute(fft_->plan);
  std::copy(fft_->out, fft_->out + n, increments.begin());
}

void CirculantSampler::sample_values(RandomStream& rs, std::span<double> out) {
  const std::size_t n = grid_.size();
  if (out.size() != n) throw std::invalid_argument("sample_values: output size mismatch");
  if (fallback_ != nullptr) {
    fallback_->sample_values(rs, out);
    return;
  }
  rs.gaussian(g_);
  transform(g_, out);
  for (std::size_t i = 1; i < n; ++i) out[i] += out[i - 1];
}

FbmPath CirculantSampler::sample(RandomStream& rs) {
  FbmPath path{h_, std::vector<double>(grid_.size())};
  sample_values(rs, path.values);
  return path;
}

FbmPath sample_cholesky(const HurstParam& h, const UniformGrid& grid, RandomStream& rs) {
  CholeskySampler sampler(h, grid);
  return sampler.sample(rs);
}

FbmPath sample_circulant(const HurstParam& h, const UniformGrid& grid, RandomStream& rs) {
  CirculantSampler sampler(h, grid);
  return sampler.sample(rs);
}

}  // namespace fbmax
