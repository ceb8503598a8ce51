#pragma once

#include <cstdint>
#include <random>

#include "optlab/vec.hpp"

namespace optlab {

// Stable 64-bit mixer used to derive independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : eng_(mix_seed(seed, stream)) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  double gaussian(double mean = 0.0, double sd = 1.0) {
    return std::normal_distribution<double>(mean, sd)(eng_);
  }
  std::uint64_t integer(std::uint64_t n) {  // uniform in [0, n)
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_);
  }

  vec::Vec gaussian_vec(std::size_t n, double sd) {
    vec::Vec v(n);
    for (auto& x : v) x = gaussian(0.0, sd);
    return v;
  }

  // Uniform on the unit sphere in R^n.
  vec::Vec unit_vec(std::size_t n) {
    vec::Vec v;
    double r = 0.0;
    do {
      v = gaussian_vec(n, 1.0);
      r = vec::norm(v);
    } while (r < 1e-12);
    return vec::scale(1.0 / r, v);
  }

  // Uniform in the ball of given radius centered at origin.
  vec::Vec ball_vec(std::size_t n, double radius) {
    vec::Vec u = unit_vec(n);
    double r = radius * std::pow(uniform(), 1.0 / static_cast<double>(n));
    return vec::scale(r, u);
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace optlab
