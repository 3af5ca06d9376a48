#include "gencs/relu_net.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gencs/rng.hpp"

namespace gencs {

double apply_activation(ActivationKind kind, double v) {
  switch (kind) {
    case ActivationKind::positive:
      return v >= 0.0 ? v : 0.0;
    case ActivationKind::negative:
      return v <= 0.0 ? v : 0.0;
    case ActivationKind::none:
      return v;
  }
  return v;
}

namespace {

void activate_in_place(ActivationKind kind, std::vector<double>& v) {
  if (kind == ActivationKind::none) return;
  for (double& x : v) x = apply_activation(kind, x);
}

void check_finite(const WeightMatrix& w) {
  for (std::size_t r = 0; r < w.rows(); ++r)
    for (std::size_t c = 0; c < w.cols(); ++c)
      if (!std::isfinite(w.entry(r, c)))
        throw std::invalid_argument("layer weight is not finite");
}

}  // namespace

ReluNetwork::ReluNetwork(std::vector<AffineReluLayer> layers)
    : layers_(std::move(layers)) {
  if (layers_.empty()) throw std::invalid_argument("network needs at least one layer");
  for (std::size_t t = 0; t < layers_.size(); ++t) {
    const auto& w = layers_[t].weights;
    if (w.rows() == 0 || w.cols() == 0)
      throw std::invalid_argument("layer " + std::to_string(t) + " has empty shape");
    if (t > 0 && w.cols() != layers_[t - 1].weights.rows())
      throw std::invalid_argument("layer " + std::to_string(t) +
                                  " input dim does not chain with previous layer");
    if (!w.is_sparse()) check_finite(w);
  }
  input_dim_ = layers_.front().weights.cols();
  output_dim_ = layers_.back().weights.rows();
}

std::vector<double> ReluNetwork::forward(std::span<const double> x) const {
  if (x.size() != input_dim_)
    throw std::invalid_argument("forward: input has dimension " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(input_dim_));
  std::vector<double> cur(x.begin(), x.end());
  std::vector<double> next;
  for (const auto& layer : layers_) {
    next.assign(layer.weights.rows(), 0.0);
    layer.weights.matvec(cur, next);
    activate_in_place(layer.activation, next);
    cur.swap(next);
  }
  return cur;
}

std::vector<std::vector<double>> ReluNetwork::layer_outputs(
    std::span<const double> x) const {
  if (x.size() != input_dim_)
    throw std::invalid_argument("layer_outputs: input has dimension " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(input_dim_));
  std::vector<std::vector<double>> outs;
  outs.reserve(layers_.size());
  std::vector<double> cur(x.begin(), x.end());
  for (const auto& layer : layers_) {
    std::vector<double> next(layer.weights.rows(), 0.0);
    layer.weights.matvec(cur, next);
    activate_in_place(layer.activation, next);
    outs.push_back(next);
    cur.swap(next);
  }
  return outs;
}

ReluNetwork random_init(std::size_t depth, std::size_t width, std::size_t input_dim,
                        std::uint64_t seed) {
  if (depth < 1 || width < 1 || input_dim < 1)
    throw std::invalid_argument("random_init: depth, width and input_dim must be >= 1");
  Rng rng(seed);
  const double stddev = std::sqrt(2.0 / static_cast<double>(width));
  std::vector<AffineReluLayer> layers;
  layers.reserve(depth);
  for (std::size_t t = 0; t < depth; ++t) {
    const std::size_t in = (t == 0) ? input_dim : width;
    Matrix w(width, in);
    for (double& v : w.a) v = stddev * rng.gaussian();
    layers.push_back({WeightMatrix(std::move(w)), ActivationKind::positive});
  }
  return ReluNetwork(std::move(layers));
}

}  // namespace gencs
