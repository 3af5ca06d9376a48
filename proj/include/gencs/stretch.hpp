#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gencs {

// Monte-Carlo harness for the pairwise stretch of randomly initialized ReLU
// networks: the per-layer ratio ||G_l(x_i) - G_l(x_j)|| / ||x_i - x_j|| over
// a finite point set.

struct StretchTrial {
  std::vector<double> per_layer_max;  // max over pairs, one entry per layer
  bool violated = false;              // any pair/layer above 1 + epsilon
};

struct StretchReport {
  std::size_t depth = 0, width = 0, input_dim = 0, points = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::vector<StretchTrial> trials;
  double violation_fraction = 0.0;
  double max_stretch_seen = 0.0;
};

// Per trial: fresh random net, `points` points uniform on the unit sphere in
// R^input_dim, all pairs evaluated through every layer.
StretchReport stretch_experiment(std::size_t depth, std::size_t width,
                                 std::size_t input_dim, std::size_t points,
                                 double epsilon, std::size_t trials,
                                 std::uint64_t seed);

// i.i.d. samples of the squared one-layer stretch
//   Delta = ||rho(A x) - rho(A y)||^2 / ||x - y||^2
// for a fresh N(0, 2/width) layer per sample and the given fixed pair. The
// per-row projections (<a, x>, <a, y>) are bivariate normal, so they are
// sampled directly instead of materializing the layer.
std::vector<double> delta_l_samples_for(std::span<const double> x,
                                        std::span<const double> y,
                                        std::size_t width, std::size_t count,
                                        std::uint64_t seed);

// Same, for a random fixed pair drawn uniformly on the unit sphere in R^width.
std::vector<double> delta_l_samples(std::size_t width, std::size_t count,
                                    std::uint64_t seed);

// Reference implementation that materializes the Gaussian layer; kept for
// cross-checking the direct sampler.
std::vector<double> delta_l_samples_explicit(std::span<const double> x,
                                             std::span<const double> y,
                                             std::size_t width, std::size_t count,
                                             std::uint64_t seed);

}  // namespace gencs
