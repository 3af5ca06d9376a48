#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "gencs/relu_net.hpp"

namespace gencs {

// One angular gadget of the sparsity-producing generator. Gadget i of an
// n-output network is nonzero exactly on the polar wedges
// theta in (i*alpha, (i+1)*alpha) and its pi-shifted mirror, alpha = pi/(n+1).
struct GadgetParams {
  std::size_t n = 0;
  std::size_t index = 0;  // 1-based gadget index in [1, n]
  double alpha = 0.0;

  GadgetParams(std::size_t n_, std::size_t index_);
};

// Generator with input dim 2k and output dim n whose range contains every
// k-sparse vector. Three layers: 4nk wedge neurons, 2nk bump neurons, and a
// linear output combining the bumps.
struct SparseGeneratorNet {
  ReluNetwork net;
  std::size_t n = 0;
  std::size_t k = 0;

  std::vector<double> forward(std::span<const double> latent) const {
    return net.forward(latent);
  }
};

SparseGeneratorNet build_one_sparse_net(std::size_t n);
SparseGeneratorNet build_sparsity_net(std::size_t n, std::size_t k);

// Latent point that the 1-sparse generator maps exactly onto z (one nonzero).
std::pair<double, double> encode_one_sparse(std::span<const double> z);

// Latent for an at-most-k-sparse z: nonzero coordinates are assigned to
// copies in ascending index order, unused copies receive (0, 0).
std::vector<double> encode_k_sparse(std::span<const double> z,
                                    const SparseGeneratorNet& net);

// Closed-form value of output coordinate i computed from polar coordinates,
// without the network; used to cross-check the construction.
double gadget_oracle(const GadgetParams& params, double x1, double x2);

// |LHS - RHS| of the bump identity
//   sin(beta + alpha/2 - theta)/sin(alpha/2) - sin(beta - theta)/sin(alpha)
//     = sin(beta - theta + alpha)/sin(alpha).
double trig_identity_residual(double beta, double theta, double alpha);

}  // namespace gencs
