#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace fbmax {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Random source addressed by (master seed, stream index). Reconstructing a
/// stream with the same pair replays the identical draw sequence, so samplers
/// stay deterministic under any worker partitioning that assigns one stream
/// per sample index.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(splitmix64(splitmix64(seed) + stream)) {}

  double gaussian() { return normal_(engine_); }

  void gaussian(std::span<double> out) {
    for (double& x : out) x = normal_(engine_);
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace fbmax
