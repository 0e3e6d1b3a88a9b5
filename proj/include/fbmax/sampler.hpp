#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "fbmax/random.hpp"
#include "fbmax/types.hpp"

namespace fbmax {

/// Exact sampler backed by a dense Cholesky factor of the grid covariance.
/// Construction is O(n^3); each draw is O(n^2).
class CholeskySampler {
 public:
  static constexpr std::size_t kDefaultMaxN = 8192;

  /// Throws std::invalid_argument when n exceeds max_n and std::runtime_error
  /// when the factorization fails (numerically non-PSD covariance).
  CholeskySampler(HurstParam h, UniformGrid grid, std::size_t max_n = kDefaultMaxN);

  FbmPath sample(RandomStream& rs);
  void sample_values(RandomStream& rs, std::span<double> out);

  std::size_t size() const { return grid_.size(); }
  const HurstParam& hurst() const { return h_; }

 private:
  HurstParam h_;
  UniformGrid grid_;
  std::vector<double> factor_;  // packed row-major lower triangle
  std::vector<double> z_;
};

/// Spectrum of the circulant embedding of the increment autocovariance.
/// The embedding size is the smallest power of two >= 2(n-1); eigenvalues in
/// [-kNegativeTol * max, 0) are clamped to zero, anything below marks the
/// embedding unusable.
struct CirculantSpectrum {
  static constexpr double kNegativeTol = 1e-10;

  std::size_t n = 0;
  std::size_t embedding_size = 0;
  std::vector<double> eigenvalues;  // half spectrum, indices 0..embedding_size/2
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  std::size_t clamped = 0;
  bool usable = true;
};

CirculantSpectrum circulant_spectrum(const HurstParam& h, const UniformGrid& grid);

/// Exact sampler: the increment sequence is drawn through a circulant embedding
/// (one half-spectrum FFT per path) and cumulatively summed. When the embedding
/// spectrum has a genuinely negative eigenvalue the sampler falls back to
/// CholeskySampler; used_cholesky_fallback() reports that.
///
/// Draw order per path: g[0] is the DC mode, g[2k-1], g[2k] the cosine/sine pair
/// of mode k for 0 < k < M/2, g[M-1] the Nyquist mode.
class CirculantSampler {
 public:
  CirculantSampler(HurstParam h, UniformGrid grid);
  CirculantSampler(HurstParam h, UniformGrid grid, CirculantSpectrum spectrum);
  ~CirculantSampler();

  CirculantSampler(CirculantSampler&&) noexcept;
  CirculantSampler& operator=(CirculantSampler&&) noexcept;
  CirculantSampler(const CirculantSampler&) = delete;
  CirculantSampler& operator=(const CirculantSampler&) = delete;

  FbmPath sample(RandomStream& rs);
  void sample_values(RandomStream& rs, std::span<double> out);

  /// Deterministic linear map from gaussian_count() standard normals to the n
  /// grid increments. Not available in fallback mode.
  void transform(std::span<const double> g, std::span<double> increments);
  std::size_t gaussian_count() const;

  bool used_cholesky_fallback() const { return fallback_ != nullptr; }
  std::size_t size() const { return grid_.size(); }
  const HurstParam& hurst() const { return h_; }
  const CirculantSpectrum& spectrum() const { return spectrum_; }

 private:
  struct Fft;

  HurstParam h_;
  UniformGrid grid_;
  CirculantSpectrum spectrum_;
  std::vector<double> coef_;  // sqrt(lambda_k / M), pair modes carry 1/sqrt(2)
  std::unique_ptr<Fft> fft_;
  std::unique_ptr<CholeskySampler> fallback_;
  std::vector<double> g_;
};

/// One-shot draws; prefer the sampler classes when drawing many paths.
FbmPath sample_cholesky(const HurstParam& h, const UniformGrid& grid, RandomStream& rs);
FbmPath sample_circulant(const HurstParam& h, const UniformGrid& grid, RandomStream& rs);

}  // namespace fbmax
