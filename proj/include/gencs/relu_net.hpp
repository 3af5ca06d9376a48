#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gencs/matrix.hpp"

namespace gencs {

// Unbiased elementwise activations. `positive` keeps x * 1(x >= 0),
// `negative` keeps x * 1(x <= 0), `none` is the identity. With no bias term
// every network built from these is positively homogeneous.
enum class ActivationKind { positive, negative, none };

double apply_activation(ActivationKind kind, double v);

struct AffineReluLayer {
  WeightMatrix weights;  // out_dim x in_dim, no bias
  ActivationKind activation = ActivationKind::positive;
};

// A feedforward stack of unbiased affine layers with per-layer activations.
class ReluNetwork {
 public:
  ReluNetwork() = default;
  explicit ReluNetwork(std::vector<AffineReluLayer> layers);

  std::size_t input_dim() const { return input_dim_; }
  std::size_t output_dim() const { return output_dim_; }
  std::size_t depth() const { return layers_.size(); }
  const std::vector<AffineReluLayer>& layers() const { return layers_; }

  std::vector<double> forward(std::span<const double> x) const;
  // Post-activation output of every layer; the last entry equals forward(x).
  std::vector<std::vector<double>> layer_outputs(std::span<const double> x) const;

 private:
  std::vector<AffineReluLayer> layers_;
  std::size_t input_dim_ = 0;
  std::size_t output_dim_ = 0;
};

// He-style random network: first layer width x input_dim, remaining layers
// width x width, all entries N(0, 2/width), all activations positive.
ReluNetwork random_init(std::size_t depth, std::size_t width, std::size_t input_dim,
                        std::uint64_t seed);

}  // namespace gencs
