#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "gencs/codes.hpp"

namespace gencs {

// One-dimensional path: linear interpolation through `values` at ascending
// `knots`, constant extension outside [knots.front(), knots.back()].
struct PiecewiseLinearMap {
  std::vector<double> knots;
  std::vector<std::vector<double>> values;  // one point in R^{n/k} per knot
  double max_segment_stretch = 0.0;         // exhaustive chord/gap ratio
  double stretch_constant = 0.0;            // max_segment_stretch / L
};

// Path through the first min(floor(L r / R), |codebook|) codebook points,
// scaled to the ball of radius R/sqrt(k). Knots are j * r/(sqrt(k) |P'|).
PiecewiseLinearMap build_g(double L, double r, std::size_t k, std::size_t n,
                           double R, const BalancedCodebook& codebook);

std::vector<double> eval_g(const PiecewiseLinearMap& g, double x);

// Blockwise application of g to each coordinate of x, concatenated.
std::vector<double> tensor_power_eval(const PiecewiseLinearMap& g, std::size_t k,
                                      std::span<const double> x);

struct SeparationCertificates {
  double max_latent_norm = 0.0;       // <= r
  double max_image_norm = 0.0;        // <= R
  double coordinate_deviation = 0.0;  // max | |coord| sqrt(n)/R - 1 |
  double min_pairwise_distance = 0.0; // >= R/sqrt(6)
  std::size_t cardinality = 0;
  double cardinality_bound = 0.0;     // (|P'|/2)^(k/2)
  double lipschitz_estimate = 0.0;
  double max_segment_stretch = 0.0;
};

// Latent points X in B_k(r) together with their images Z = G(X) in B_n(R),
// all stated bounds verified by direct computation before the object is
// returned.
struct WellSeparatedSet {
  std::vector<std::vector<double>> latent_points;  // X
  std::vector<std::vector<double>> image_points;   // Z
  double r = 0.0, R = 0.0, L = 0.0;
  std::size_t k = 0, n = 0;
  std::size_t path_size = 0;  // |P'|
  PiecewiseLinearMap g;
  SeparationCertificates cert;

  std::vector<double> eval(std::span<const double> x) const {
    return tensor_power_eval(g, k, x);
  }
};

struct SeparatedSetOptions {
  std::size_t max_points = 65536;
  int codebook_attempts = 20000;
  std::size_t lipschitz_samples = 200;
};

WellSeparatedSet build_separated_set(double L, double r, std::size_t k,
                                     std::size_t n, double R, std::uint64_t seed,
                                     const SeparatedSetOptions& opts = {});

// Max observed ||f(x) - f(y)|| / ||x - y|| over `samples` random pairs in the
// ball of the given radius plus any caller-supplied pairs (for piecewise
// linear maps the adjacent-knot pairs are the extremal directions).
double lipschitz_estimate(
    const std::function<std::vector<double>(std::span<const double>)>& f,
    std::size_t dim, double domain_radius, std::size_t samples, std::uint64_t seed,
    const std::vector<std::pair<std::vector<double>, std::vector<double>>>&
        extra_pairs = {});

}  // namespace gencs
