#include "gencs/stretch.hpp"

#include <cmath>
#include <stdexcept>

#include "gencs/matrix.hpp"
#include "gencs/relu_net.hpp"
#include "gencs/rng.hpp"

namespace gencs {

StretchReport stretch_experiment(std::size_t depth, std::size_t width,
                                 std::size_t input_dim, std::size_t points,
                                 double epsilon, std::size_t trials,
                                 std::uint64_t seed) {
  if (points < 2) throw std::invalid_argument("stretch_experiment: need >= 2 points");
  StretchReport report;
  report.depth = depth;
  report.width = width;
  report.input_dim = input_dim;
  report.points = points;
  report.epsilon = epsilon;
  report.seed = seed;
  report.trials.resize(trials);

  Rng master(seed);
  const std::int64_t n_trials = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t ti = 0; ti < n_trials; ++ti) {
    Rng rng = master.fork(static_cast<std::uint64_t>(ti));
    const ReluNetwork net = random_init(depth, width, input_dim, rng.next_u64());

    std::vector<std::vector<double>> xs(points);
    for (auto& x : xs) {
      do {
        x = rng.on_sphere(input_dim);
      } while ([&] {  // resample coincident points
        for (const auto& prev : xs)
          if (&prev != &x && !prev.empty() && dist2(prev, x) == 0.0) return true;
        return false;
      }());
    }

    std::vector<std::vector<std::vector<double>>> outs(points);
    for (std::size_t p = 0; p < points; ++p) outs[p] = net.layer_outputs(xs[p]);

    StretchTrial trial;
    trial.per_layer_max.assign(depth, 0.0);
    for (std::size_t a = 0; a < points; ++a)
      for (std::size_t b = a + 1; b < points; ++b) {
        const double dx = dist2(xs[a], xs[b]);
        for (std::size_t l = 0; l < depth; ++l) {
          const double s = dist2(outs[a][l], outs[b][l]) / dx;
          if (s > trial.per_layer_max[l]) trial.per_layer_max[l] = s;
        }
      }
    for (double s : trial.per_layer_max)
      if (s > 1.0 + epsilon) trial.violated = true;
    report.trials[static_cast<std::size_t>(ti)] = trial;
  }

  std::size_t violated = 0;
  for (const auto& t : report.trials) {
    violated += t.violated ? 1 : 0;
    for (double s : t.per_layer_max)
      if (s > report.max_stretch_seen) report.max_stretch_seen = s;
  }
  report.violation_fraction =
      trials == 0 ? 0.0 : static_cast<double>(violated) / static_cast<double>(trials);
  return report;
}

std::vector<double> delta_l_samples_for(std::span<const double> x,
                                        std::span<const double> y,
                                        std::size_t width, std::size_t count,
                                        std::uint64_t seed) {
  const double dx2 = [&] {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - y[i];
      acc += d * d;
    }
    return acc;
  }();
  if (dx2 == 0.0)
    throw std::invalid_argument("delta_l_samples: x and y must be distinct");
  if (x.size() != y.size())
    throw std::invalid_argument("delta_l_samples: dimension mismatch");

  // Per neuron, (<a,x>, <a,y>) ~ N(0, (2/width) [[xx, xy], [xy, yy]]).
  // Cholesky of that covariance gives the pair from two unit normals.
  const double sigma2 = 2.0 / static_cast<double>(width);
  const double xx = dot(x, x), yy = dot(y, y), xy = dot(x, y);
  const double l11 = std::sqrt(sigma2 * xx);
  const double l21 = l11 > 0.0 ? sigma2 * xy / l11 : 0.0;
  const double l22 = std::sqrt(std::max(0.0, sigma2 * yy - l21 * l21));

  Rng rng(seed);
  std::vector<double> samples(count);
  for (std::size_t s = 0; s < count; ++s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < width; ++i) {
      const double g1 = rng.gaussian(), g2 = rng.gaussian();
      const double u = l11 * g1;
      const double v = l21 * g1 + l22 * g2;
      const double du = (u > 0.0 ? u : 0.0) - (v > 0.0 ? v : 0.0);
      acc += du * du;
    }
    samples[s] = acc / dx2;
  }
  return samples;
}

std::vector<double> delta_l_samples(std::size_t width, std::size_t count,
                                    std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<double> x = rng.on_sphere(width);
  const std::vector<double> y = rng.on_sphere(width);
  return delta_l_samples_for(x, y, width, count, rng.next_u64());
}

std::vector<double> delta_l_samples_explicit(std::span<const double> x,
                                             std::span<const double> y,
                                             std::size_t width, std::size_t count,
                                             std::uint64_t seed) {
  const double dx2 = [&] {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - y[i];
      acc += d * d;
    }
    return acc;
  }();
  if (dx2 == 0.0)
    throw std::invalid_argument("delta_l_samples_explicit: x and y must be distinct");

  Rng rng(seed);
  const double stddev = std::sqrt(2.0 / static_cast<double>(width));
  std::vector<double> samples(count);
  for (std::size_t s = 0; s < count; ++s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < width; ++i) {
      double u = 0.0, v = 0.0;
      for (std::size_t c = 0; c < x.size(); ++c) {
        const double a = stddev * rng.gaussian();
        u += a * x[c];
        v += a * y[c];
      }
      const double du = (u > 0.0 ? u : 0.0) - (v > 0.0 ? v : 0.0);
      acc += du * du;
    }
    samples[s] = acc / dx2;
  }
  return samples;
}

}  // namespace gencs
