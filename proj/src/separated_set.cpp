#include "gencs/separated_set.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gencs/kernels.hpp"
#include "gencs/matrix.hpp"
#include "gencs/rng.hpp"

namespace gencs {

namespace {

// Feasible message bits for a random balanced code of the given block
// length: keep the expected number of out-of-window codewords a few at most.
std::size_t feasible_code_bits(std::size_t block) {
  const double p_out = std::erfc(std::sqrt(static_cast<double>(block)) / (3.0 * std::numbers::sqrt2));
  const double bits = std::log2(6.0 / p_out);
  const auto m = static_cast<std::size_t>(std::max(1.0, std::floor(bits)));
  return std::min(m, block - 1);
}

}  // namespace

PiecewiseLinearMap build_g(double L, double r, std::size_t k, std::size_t n,
                           double R, const BalancedCodebook& codebook) {
  if (!(R > 0.0) || !(r > 0.0) || !(L > 0.0))
    throw std::invalid_argument("build_g: L, r, R must be positive");
  if (k == 0 || n % k != 0)
    throw std::invalid_argument("build_g: n must be divisible by k");

  const auto want = static_cast<std::size_t>(std::floor(L * r / R + 1e-9));
  const std::size_t path = std::min(want, codebook.points.size());
  if (path < 2)
    throw std::invalid_argument("build_g: path through fewer than 2 points (|P'|=" +
                                std::to_string(path) + ")");

  const double sqrt_k = std::sqrt(static_cast<double>(k));
  const double scale = R / sqrt_k;  // codebook points have unit norm

  PiecewiseLinearMap g;
  g.knots.resize(path);
  g.values.resize(path);
  for (std::size_t j = 0; j < path; ++j) {
    g.knots[j] = static_cast<double>(j + 1) * r / (sqrt_k * static_cast<double>(path));
    std::vector<double> v = codebook.points[j];
    for (double& c : v) c *= scale;
    g.values[j] = std::move(v);
  }
  for (std::size_t j = 0; j + 1 < path; ++j) {
    const double chord = dist2(g.values[j], g.values[j + 1]);
    const double gap = g.knots[j + 1] - g.knots[j];
    g.max_segment_stretch = std::max(g.max_segment_stretch, chord / gap);
  }
  g.stretch_constant = g.max_segment_stretch / L;
  return g;
}

std::vector<double> eval_g(const PiecewiseLinearMap& g, double x) {
  if (x <= g.knots.front()) return g.values.front();
  if (x >= g.knots.back()) return g.values.back();
  const auto it = std::upper_bound(g.knots.begin(), g.knots.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - g.knots.begin()) - 1;
  const double t = (x - g.knots[j]) / (g.knots[j + 1] - g.knots[j]);
  const auto& a = g.values[j];
  const auto& b = g.values[j + 1];
  std::vector<double> out(a.size());
  for (std::size_t c = 0; c < a.size(); ++c) out[c] = a[c] * (1.0 - t) + b[c] * t;
  return out;
}

std::vector<double> tensor_power_eval(const PiecewiseLinearMap& g, std::size_t k,
                                      std::span<const double> x) {
  if (x.size() != k)
    throw std::invalid_argument("tensor_power_eval: input must have k coordinates");
  const std::size_t block = g.values.front().size();
  std::vector<double> out;
  out.reserve(k * block);
  for (std::size_t c = 0; c < k; ++c) {
    const std::vector<double> b = eval_g(g, x[c]);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

double lipschitz_estimate(
    const std::function<std::vector<double>(std::span<const double>)>& f,
    std::size_t dim, double domain_radius, std::size_t samples, std::uint64_t seed,
    const std::vector<std::pair<std::vector<double>, std::vector<double>>>&
        extra_pairs) {
  Rng rng(seed);
  double best = 0.0;
  const auto ratio = [&](std::span<const double> x, std::span<const double> y) {
    const double dx = dist2(x, y);
    if (dx == 0.0) return 0.0;
    const std::vector<double> fx = f(x), fy = f(y);
    return dist2(fx, fy) / dx;
  };
  for (const auto& [x, y] : extra_pairs) best = std::max(best, ratio(x, y));
  for (std::size_t s = 0; s < samples; ++s) {
    const std::vector<double> x = rng.in_ball(dim, domain_radius);
    const std::vector<double> y = rng.in_ball(dim, domain_radius);
    best = std::max(best, ratio(x, y));
  }
  return best;
}

WellSeparatedSet build_separated_set(double L, double r, std::size_t k,
                                     std::size_t n, double R, std::uint64_t seed,
                                     const SeparatedSetOptions& opts) {
  if (k == 0 || n == 0 || n % k != 0)
    throw std::invalid_argument("build_separated_set: n must be divisible by k");
  if (!(R > 0.0) || !std::isfinite(R))
    throw std::invalid_argument("build_separated_set: R must be positive");

  const std::size_t block = n / k;
  const auto want = static_cast<std::size_t>(std::floor(L * r / R + 1e-9));
  const std::size_t cap = std::size_t{1} << feasible_code_bits(block);
  Rng rng(seed);

  const BalancedCodebook cb = gen_balanced_codebook(
      block, std::max<std::size_t>(2, std::min(want, cap)), rng.next_u64(),
      opts.codebook_attempts);

  PiecewiseLinearMap g = build_g(L, r, k, n, R, cb);
  const std::size_t path = g.knots.size();

  // Prime-sized alphabet A: the first q path points, q in (|P'|/2, |P'|].
  const auto q64 = find_prime_in(path / 2);
  if (q64 < k)
    throw construction_error(
        "build_separated_set: alphabet prime " + std::to_string(q64) +
            " is smaller than k=" + std::to_string(k) +
            "; enlarge L*r/R so the path has more points",
        static_cast<double>(q64));
  const auto q = static_cast<std::uint32_t>(q64);

  const std::size_t msg_len = (k + 1) / 2;
  double space = std::pow(static_cast<double>(q), static_cast<double>(msg_len));
  const auto count = static_cast<std::uint64_t>(
      std::min(space, static_cast<double>(opts.max_points)));
  const RsSubset rs = rs_subset(q, k, count, rng.next_u64());

  WellSeparatedSet set;
  set.r = r;
  set.R = R;
  set.L = L;
  set.k = k;
  set.n = n;
  set.path_size = path;
  set.latent_points.reserve(rs.tuples.size());
  set.image_points.reserve(rs.tuples.size());
  for (const auto& tuple : rs.tuples) {
    std::vector<double> x(k);
    for (std::size_t c = 0; c < k; ++c) x[c] = g.knots[tuple[c]];
    set.image_points.push_back(tensor_power_eval(g, k, x));
    set.latent_points.push_back(std::move(x));
  }

  // Certify every stated bound before handing the set out.
  SeparationCertificates cert;
  cert.cardinality = set.image_points.size();
  cert.cardinality_bound =
      std::pow(static_cast<double>(path) / 2.0, static_cast<double>(k) / 2.0);
  cert.max_segment_stretch = g.max_segment_stretch;

  const double coord = R / std::sqrt(static_cast<double>(n));
  for (const auto& x : set.latent_points)
    cert.max_latent_norm = std::max(cert.max_latent_norm, norm2(x));
  for (const auto& z : set.image_points) {
    cert.max_image_norm = std::max(cert.max_image_norm, norm2(z));
    for (double c : z)
      cert.coordinate_deviation =
          std::max(cert.coordinate_deviation, std::abs(std::abs(c) / coord - 1.0));
  }
  cert.min_pairwise_distance = kernels::pairwise_min_distance(set.image_points);

  std::vector<std::pair<std::vector<double>, std::vector<double>>> knot_pairs;
  for (std::size_t j = 0; j + 1 < path; ++j) {
    std::vector<double> a(k, g.knots[0]), b(k, g.knots[0]);
    a[0] = g.knots[j];
    b[0] = g.knots[j + 1];
    knot_pairs.emplace_back(std::move(a), std::move(b));
  }
  cert.lipschitz_estimate = lipschitz_estimate(
      [&](std::span<const double> x) { return tensor_power_eval(g, k, x); }, k, r,
      opts.lipschitz_samples, rng.next_u64(), knot_pairs);

  const double slack = 1.0 + 1e-9;
  if (cert.max_latent_norm > r * slack)
    throw construction_error("build_separated_set: latent norm bound violated",
                             cert.max_latent_norm);
  if (cert.max_image_norm > R * slack)
    throw construction_error("build_separated_set: image norm bound violated",
                             cert.max_image_norm);
  if (cert.coordinate_deviation > 1e-9)
    throw construction_error(
        "build_separated_set: image coordinates leave the +-R/sqrt(n) alphabet",
        cert.coordinate_deviation);
  if (cert.min_pairwise_distance * slack < R / std::sqrt(6.0))
    throw construction_error("build_separated_set: min distance below R/sqrt(6)",
                             cert.min_pairwise_distance);
  if (static_cast<double>(cert.cardinality) + 1e-9 < cert.cardinality_bound)
    throw construction_error("build_separated_set: cardinality below (|P'|/2)^(k/2)",
                             static_cast<double>(cert.cardinality));

  set.g = std::move(g);
  set.cert = cert;
  return set;
}

}  // namespace gencs
