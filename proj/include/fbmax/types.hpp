#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fbmax {

enum class HurstRegime { kRough, kBrownian, kSmooth };

/// Hurst exponent restricted to (0, 1]. Increments of the process are negatively
/// correlated below 1/2, independent at 1/2 and positively correlated above.
class HurstParam {
 public:
  explicit HurstParam(double h) : h_(h) {
    if (!(h > 0.0) || h > 1.0) {
      throw std::invalid_argument("HurstParam: H must be in (0, 1], got " + std::to_string(h));
    }
  }

  double value() const { return h_; }
  double two_h() const { return 2.0 * h_; }

  HurstRegime regime() const {
    if (h_ < 0.5) return HurstRegime::kRough;
    if (h_ > 0.5) return HurstRegime::kSmooth;
    return HurstRegime::kBrownian;
  }

 private:
  double h_;
};

/// Uniform grid t_i = i/n, i = 1..n. The point t = 0 is excluded: the process is
/// pinned to zero there.
class UniformGrid {
 public:
  explicit UniformGrid(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("UniformGrid: n must be >= 1");
  }

  std::size_t size() const { return n_; }

  /// i is zero-based: point(i) = (i+1)/n.
  double point(std::size_t i) const { return static_cast<double>(i + 1) / static_cast<double>(n_); }

 private:
  std::size_t n_;
};

/// One sampled trajectory on a uniform grid; values[i] = B((i+1)/n).
struct FbmPath {
  HurstParam hurst;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double time(std::size_t i) const {
    return static_cast<double>(i + 1) / static_cast<double>(values.size());
  }
};

/// Dense symmetric covariance matrix, row-major storage.
class CovMatrix {
 public:
  explicit CovMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {
    if (n == 0) throw std::invalid_argument("CovMatrix: dimension must be >= 1");
  }

  std::size_t size() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double& at(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

}  // namespace fbmax
