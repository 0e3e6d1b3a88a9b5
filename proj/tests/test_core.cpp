#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fbmax/covariance.hpp"
#include "fbmax/io.hpp"
#include "fbmax/random.hpp"
#include "fbmax/sampler.hpp"
#include "fbmax/stats.hpp"
#include "fbmax/types.hpp"

using namespace fbmax;

namespace {

double rel(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("HurstParam validates and classifies") {
  CHECK_THROWS_AS(HurstParam(0.0), std::invalid_argument);
  CHECK_THROWS_AS(HurstParam(-0.3), std::invalid_argument);
  CHECK_THROWS_AS(HurstParam(1.0001), std::invalid_argument);
  CHECK_THROWS_AS(HurstParam(std::nan("")), std::invalid_argument);
  CHECK(HurstParam(1.0).value() == 1.0);
  CHECK(HurstParam(0.3).regime() == HurstRegime::kRough);
  CHECK(HurstParam(0.5).regime() == HurstRegime::kBrownian);
  CHECK(HurstParam(0.7).regime() == HurstRegime::kSmooth);
}

TEST_CASE("UniformGrid points are i/n") {
  CHECK_THROWS_AS(UniformGrid(0), std::invalid_argument);
  UniformGrid g(4);
  CHECK(g.size() == 4);
  CHECK(g.point(0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g.point(3) == 1.0);
}

TEST_CASE("increment_variance") {
  HurstParam h(0.3);
  CHECK(increment_variance(h, 0.37, 0.37) == 0.0);
  CHECK(increment_variance(HurstParam(0.5), 0.0, 1.0) == 1.0);
  CHECK(rel(increment_variance(h, 0.25, 0.75), 0.65975395538644713) < 1e-14);
  CHECK_THROWS_AS(increment_variance(h, -0.1, 0.5), std::invalid_argument);
}

TEST_CASE("cov_matrix closed forms") {
  {
    CovMatrix c = cov_matrix(HurstParam(0.5), UniformGrid(2));
    CHECK(c.at(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c.at(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c.at(1, 0) == c.at(0, 1));
    CHECK(c.at(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  }
  {
    CovMatrix c = cov_matrix(HurstParam(0.25), UniformGrid(2));
    CHECK(rel(c.at(0, 0), 0.70710678118654752) < 1e-14);
    CHECK(rel(c.at(0, 1), 0.5) < 1e-14);
    CHECK(rel(c.at(1, 1), 1.0) < 1e-14);
  }
}

TEST_CASE("cov_matrix diagonal and increment identity") {
  for (double hv : {0.1, 0.3, 0.5, 0.75, 1.0}) {
    HurstParam h(hv);
    UniformGrid grid(17);
    CovMatrix c = cov_matrix(h, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(c.at(i, i) == std::pow(grid.point(i), h.two_h()));
      for (std::size_t j = 0; j < i; ++j) {
        const double lhs = c.at(i, i) + c.at(j, j) - 2.0 * c.at(i, j);
        const double rhs = increment_variance(h, grid.point(i), grid.point(j));
        CHECK(rel(lhs, rhs) < 1e-12);
      }
    }
  }
}

TEST_CASE("covariance self-similarity") {
  HurstParam h(0.35);
  for (double c : {0.5, 2.7}) {
    for (auto [s, t] : {std::pair{0.2, 0.9}, std::pair{0.64, 0.31}, std::pair{1.5, 1.5}}) {
      const double scaled = covariance(h, c * s, c * t);
      const double base = std::pow(c, h.two_h()) * covariance(h, s, t);
      CHECK(rel(scaled, base) < 1e-12);
    }
  }
}

TEST_CASE("fgn_autocovariance matches covariance differences") {
  HurstParam h(0.3);
  const std::size_t n = 16;
  UniformGrid grid(n);
  CovMatrix c = cov_matrix(h, grid);
  // Cov of increments (B_{i+1} - B_i, B_{j+1} - B_j) at lag k.
  for (std::size_t k = 0; k < 5; ++k) {
    const std::size_t i = 3;
    const std::size_t j = i + k;
    const double direct = c.at(i + 1, j + 1) - c.at(i + 1, j) - c.at(i, j + 1) + c.at(i, j);
    CHECK(rel(direct, fgn_autocovariance(h, n, k)) < 1e-10);
  }
}

TEST_CASE("RandomStream determinism and moments") {
  RandomStream a(42, 7);
  RandomStream b(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.gaussian() == b.gaussian());

  RandomStream c(42, 8);
  RandomStream d(43, 7);
  bool differs_stream = false;
  bool differs_seed = false;
  RandomStream a2(42, 7);
  for (int i = 0; i < 32; ++i) {
    const double x = a2.gaussian();
    if (x != c.gaussian()) differs_stream = true;
    if (x != d.gaussian()) differs_seed = true;
  }
  CHECK(differs_stream);
  CHECK(differs_seed);

  RandomStream rs(1234, 0);
  const std::size_t n = 200000;
  std::vector<double> xs(n);
  rs.gaussian(xs);
  SampleStats s = sample_stats(xs);
  CHECK(std::abs(s.mean) < 4.0 * s.se);
  CHECK(std::abs(s.sd - 1.0) < 0.01);
}

TEST_CASE("compensated_sum keeps tiny terms") {
  std::vector<double> xs{1e100, 1.0, -1e100};
  CHECK(compensated_sum(xs) == 1.0);
  std::vector<double> ys{0.1, 0.2, 0.3};
  CHECK(compensated_sum(ys) == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("sample_stats") {
  std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  SampleStats s = sample_stats(xs);
  CHECK(s.mean == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(s.sd == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-14));
  CHECK(s.se == doctest::Approx(s.sd / 2.0).epsilon(1e-14));
  CHECK_THROWS_AS(sample_stats(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("ks_two_sample basics") {
  std::vector<double> a(4000), b(4000);
  RandomStream rs(99, 0);
  for (auto& x : a) x = rs.gaussian();
  for (auto& x : b) x = rs.gaussian();
  const KsResult same = ks_two_sample(a, b);
  CHECK(same.p_value > 0.001);

  for (auto& x : b) x += 1.0;  // clearly shifted
  const KsResult shifted = ks_two_sample(a, b);
  CHECK(shifted.statistic > 0.3);
  CHECK(shifted.p_value < 1e-6);
}

TEST_CASE("io formatting") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(2.0) == "2");
  CHECK(io::csv_escape("plain") == "plain");
  CHECK(io::csv_escape("a,b") == "\"a,b\"");
  CHECK(io::csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("CholeskySampler basics") {
  // n = 1, H = 1/2: the path is a single standard normal, equal to the stream draw.
  CholeskySampler s(HurstParam(0.5), UniformGrid(1));
  RandomStream rs(7, 0);
  FbmPath p = s.sample(rs);
  RandomStream rs2(7, 0);
  CHECK(p.values[0] == rs2.gaussian());

  // factorization guard
  CHECK_THROWS_AS(CholeskySampler(HurstParam(0.5), UniformGrid(64), 32), std::invalid_argument);

  // construction succeeds across regimes (PSD covariance)
  for (double hv : {0.1, 0.5, 0.9}) {
    CHECK_NOTHROW(CholeskySampler(HurstParam(hv), UniformGrid(64)));
  }
}

TEST_CASE("sampler determinism per (seed, stream)") {
  for (double hv : {0.3, 0.7}) {
    HurstParam h(hv);
    UniformGrid grid(16);
    CholeskySampler cs(h, grid);
    CirculantSampler rs(h, grid);
    RandomStream s1(2024, 5);
    RandomStream s2(2024, 5);
    FbmPath a = cs.sample(s1);
    FbmPath b = cs.sample(s2);
    CHECK(a.values == b.values);
    RandomStream s3(2024, 5);
    RandomStream s4(2024, 5);
    FbmPath c = rs.sample(s3);
    FbmPath d = rs.sample(s4);
    CHECK(c.values == d.values);
    CHECK(a.values != c.values);  // methods draw differently
  }
}

// The sampler is a linear map A g with g standard normal, so its exact law is
// A A^T. Feeding unit vectors recovers A column by column; A A^T must equal the
// increment Toeplitz covariance without any Monte Carlo.
TEST_CASE("CirculantSampler transform has the exact increment law") {
  for (auto [hv, n] : {std::pair{0.3, std::size_t{8}}, std::pair{0.75, std::size_t{12}},
                       std::pair{0.5, std::size_t{5}}, std::pair{0.11, std::size_t{33}}}) {
    HurstParam h(hv);
    UniformGrid grid(n);
    CirculantSampler sampler(h, grid);
    REQUIRE_FALSE(sampler.used_cholesky_fallback());
    const std::size_t m = sampler.gaussian_count();
    std::vector<std::vector<double>> cols(m, std::vector<double>(n));
    std::vector<double> g(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      g[j] = 1.0;
      sampler.transform(g, cols[j]);
      g[j] = 0.0;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        double cov_ij = 0.0;
        for (std::size_t k = 0; k < m; ++k) cov_ij += cols[k][i] * cols[k][j];
        worst = std::max(worst, std::abs(cov_ij - fgn_autocovariance(h, n, j - i)));
      }
    }
    CHECK(worst < 1e-13);
  }
}

TEST_CASE("CirculantSampler n=1 draws a unit normal") {
  CirculantSampler s(HurstParam(0.4), UniformGrid(1));
  RandomStream rs(11, 3);
  FbmPath p = s.sample(rs);
  RandomStream rs2(11, 3);
  CHECK(p.values[0] == rs2.gaussian());
}

TEST_CASE("circulant spectrum is usable for rough and Brownian H") {
  for (double hv : {0.1, 0.3, 0.5}) {
    CirculantSpectrum s = circulant_spectrum(HurstParam(hv), UniformGrid(64));
    CHECK(s.usable);
    CHECK(s.min_eigenvalue >= 0.0);
    CHECK(s.embedding_size == 128);
  }
}

TEST_CASE("injected negative spectrum triggers the Cholesky fallback") {
  HurstParam h(0.3);
  UniformGrid grid(8);
  CirculantSpectrum bad = circulant_spectrum(h, grid);
  bad.eigenvalues[2] = -1.0;
  bad.min_eigenvalue = -1.0;
  bad.usable = false;

  CirculantSampler sampler(h, grid, bad);
  CHECK(sampler.used_cholesky_fallback());

  // In fallback mode the draw matches the dense sampler bit for bit.
  CholeskySampler dense(h, grid);
  RandomStream a(5, 0), b(5, 0);
  CHECK(sampler.sample(a).values == dense.sample(b).values);
  std::vector<double> g(8, 0.0), out(8, 0.0);
  CHECK_THROWS_AS(sampler.transform(g, out), std::logic_error);
}

TEST_CASE("tiny negative eigenvalues are clamped, not fatal") {
  HurstParam h(0.3);
  UniformGrid grid(8);
  CirculantSpectrum s = circulant_spectrum(h, grid);
  const double eps = 0.5 * CirculantSpectrum::kNegativeTol * s.max_eigenvalue;
  s.eigenvalues[1] = -eps;
  s.min_eigenvalue = -eps;
  // still usable per the tolerance rule
  CirculantSampler sampler(h, grid, s);
  CHECK_FALSE(sampler.used_cholesky_fallback());
  RandomStream rs(3, 1);
  CHECK_NOTHROW(sampler.sample(rs));
}

// Monte Carlo oracle: empirical covariance of Cholesky paths vs cov_matrix,
// judged at 4 SEs (Var(B_i B_j) = c_ii c_jj + c_ij^2 for a Gaussian vector).
TEST_CASE("cholesky empirical covariance matches cov_matrix" * doctest::timeout(120)) {
  HurstParam h(0.3);
  const std::size_t n = 8;
  UniformGrid grid(n);
  CholeskySampler sampler(h, grid);
  const std::size_t n_paths = 100000;
  std::vector<double> acc(n * n, 0.0);
  std::vector<double> mean_acc(n, 0.0);
  std::vector<double> v(n);
  for (std::size_t p = 0; p < n_paths; ++p) {
    RandomStream rs(314159, p);
    sampler.sample_values(rs, v);
    for (std::size_t i = 0; i < n; ++i) {
      mean_acc[i] += v[i];
      for (std::size_t j = i; j < n; ++j) acc[i * n + j] += v[i] * v[j];
    }
  }
  CovMatrix expected = cov_matrix(h, grid);
  const double np = static_cast<double>(n_paths);
  for (std::size_t i = 0; i < n; ++i) {
    const double mean_se = std::sqrt(expected.at(i, i) / np);
    CHECK(std::abs(mean_acc[i] / np) < 4.0 * mean_se);
    for (std::size_t j = i; j < n; ++j) {
      const double target = expected.at(i, j);
      const double var = expected.at(i, i) * expected.at(j, j) + target * target;
      const double se = std::sqrt(var / np);
      CHECK(std::abs(acc[i * n + j] / np - target) < 4.0 * se);
    }
  }
}

TEST_CASE("circulant increments at H=1/2 are uncorrelated at lag 1" * doctest::timeout(120)) {
  HurstParam h(0.5);
  const std::size_t n = 64;
  CirculantSampler sampler(h, UniformGrid(n));
  const std::size_t n_paths = 100000;
  std::vector<double> v(n);
  double sum_prod = 0.0;
  for (std::size_t p = 0; p < n_paths; ++p) {
    RandomStream rs(2718, p);
    sampler.sample_values(rs, v);
    // increments
    double prev = v[0];
    for (std::size_t i = 1; i < n; ++i) {
      const double inc = v[i] - v[i - 1];
      if (i >= 2) sum_prod += prev * inc;
      prev = inc;
    }
  }
  const double pairs = static_cast<double>(n_paths * (n - 2));
  const double var_inc = 1.0 / static_cast<double>(n);
  const double corr = sum_prod / pairs / var_inc;
  CHECK(std::abs(corr) < 4.0 / std::sqrt(pairs));
}

TEST_CASE("circulant pairwise increment variances match |s-t|^{2H}" * doctest::timeout(120)) {
  HurstParam h(0.3);
  const std::size_t n = 16;
  CirculantSampler sampler(h, UniformGrid(n));
  const std::size_t n_paths = 40000;
  std::vector<double> v(n);
  std::vector<double> acc((n + 1) * n / 2, 0.0);
  for (std::size_t p = 0; p < n_paths; ++p) {
    RandomStream rs(11235, p);
    sampler.sample_values(rs, v);
    std::size_t idx = 0;
    for (std::size_t i = 0; i <= n; ++i) {
      const double vi = i == 0 ? 0.0 : v[i - 1];
      for (std::size_t j = i + 1; j <= n; ++j) acc[idx++] += (vi - v[j - 1]) * (vi - v[j - 1]);
    }
  }
  std::size_t idx = 0;
  const double np = static_cast<double>(n_paths);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      const double target = increment_variance(h, double(i) / double(n), double(j) / double(n));
      const double se = target * std::sqrt(2.0 / np);
      CHECK(std::abs(acc[idx++] / np - target) < 4.0 * se);
    }
  }
}

TEST_CASE("cross-method max statistics agree in law (KS)" * doctest::timeout(120)) {
  HurstParam h(0.2);
  const std::size_t n = 16;
  UniformGrid grid(n);
  const std::size_t n_paths = 4000;
  std::vector<double> a(n_paths), b(n_paths), v(n);
  CholeskySampler cs(h, grid);
  for (std::size_t p = 0; p < n_paths; ++p) {
    RandomStream rs(555, p);
    cs.sample_values(rs, v);
    a[p] = *std::max_element(v.begin(), v.end());
  }
  CirculantSampler rs_sampler(h, grid);
  for (std::size_t p = 0; p < n_paths; ++p) {
    RandomStream rs(777, p);
    rs_sampler.sample_values(rs, v);
    b[p] = *std::max_element(v.begin(), v.end());
  }
  const KsResult ks = ks_two_sample(a, b);
  CHECK(ks.p_value > 0.001);
}
