#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace gencs {

// Deterministic PRNG built on the splitmix64 step. All experiment code
// derives per-trial generators with fork(), so results do not depend on
// thread count or evaluation order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Independent stream for trial `stream`; counter-based so trials can run
  // concurrently without sharing state.
  Rng fork(std::uint64_t stream) const {
    Rng child(state_ ^ (0x9e3779b97f4a7c15ull * (stream + 1)));
    child.next_u64();
    return child;
  }

  double uniform01() {  // [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Marsaglia polar method; avoids trig so the only libm calls are log/sqrt.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
  }

  std::vector<double> gaussian_vector(std::size_t dim, double stddev = 1.0) {
    std::vector<double> x(dim);
    for (double& xi : x) xi = stddev * gaussian();
    return x;
  }

  std::vector<double> on_sphere(std::size_t dim, double radius = 1.0) {
    std::vector<double> x;
    double nrm = 0.0;
    do {
      x = gaussian_vector(dim);
      nrm = 0.0;
      for (double xi : x) nrm += xi * xi;
    } while (nrm == 0.0);
    nrm = std::sqrt(nrm);
    for (double& xi : x) xi *= radius / nrm;
    return x;
  }

  std::vector<double> in_ball(std::size_t dim, double radius) {
    std::vector<double> x = on_sphere(dim);
    const double r = radius * std::pow(uniform01(), 1.0 / static_cast<double>(dim));
    for (double& xi : x) xi *= r;
    return x;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gencs
