#include "gencs/sparse_gen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gencs {

namespace {

constexpr double kPi = std::numbers::pi;

// Second-layer coefficients for the bump neurons. Chosen so the gadget peaks
// at exactly t on the wedge bisector: the first-layer neuron values are
// t*sin(x) and t*sin(x - alpha/2) for wedge offset x, and
//   sin(x)/sin(a/2) - sin(x - a/2) * sin(a)/sin(a/2)^2 = sin(a - x)/sin(a/2),
// which rises to 1 at x = a/2 and returns to 0 at x = a.
struct BumpCoeffs {
  double c1, c2;
  explicit BumpCoeffs(double alpha)
      : c1(1.0 / std::sin(alpha / 2)),
        c2(std::sin(alpha) / (std::sin(alpha / 2) * std::sin(alpha / 2))) {}
};

}  // namespace

GadgetParams::GadgetParams(std::size_t n_, std::size_t index_)
    : n(n_), index(index_), alpha(kPi / static_cast<double>(n_ + 1)) {
  if (n == 0) throw std::invalid_argument("GadgetParams: n must be >= 1");
  if (index < 1 || index > n)
    throw std::invalid_argument("GadgetParams: gadget index out of [1, n]");
}

SparseGeneratorNet build_sparsity_net(std::size_t n, std::size_t k) {
  if (n < 1 || k < 1 || k > n)
    throw std::invalid_argument("build_sparsity_net: need 1 <= k <= n");
  const double alpha = kPi / static_cast<double>(n + 1);
  const BumpCoeffs bc(alpha);

  // Layer 1: per copy and gadget, four wedge neurons
  // (a+_1, a+_2, a-_1, a-_2), positive activation.
  SparseBuilder l1(4 * n * k, 2 * k);
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t x1 = 2 * c, x2 = 2 * c + 1;
    for (std::size_t i = 1; i <= n; ++i) {
      const double beta = static_cast<double>(i) * alpha;
      const std::size_t base = c * 4 * n + (i - 1) * 4;
      const double angles[4] = {beta, beta + alpha / 2, kPi + beta,
                                kPi + beta + alpha / 2};
      for (std::size_t a = 0; a < 4; ++a) {
        l1.add(base + a, x1, std::cos(angles[a]));
        l1.add(base + a, x2, -std::sin(angles[a]));
      }
    }
  }

  // Layer 2: bump neurons. The negative bump is stored negated so the whole
  // layer can use the positive activation ([v]_- == -[-v]_+); the output
  // layer compensates with a -1 weight.
  SparseBuilder l2(2 * n * k, 4 * n * k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 1; i <= n; ++i) {
      const std::size_t a_base = c * 4 * n + (i - 1) * 4;
      const std::size_t b_base = c * 2 * n + (i - 1) * 2;
      l2.add(b_base, a_base, bc.c1);          // b+  <- a+_1, a+_2
      l2.add(b_base, a_base + 1, -bc.c2);
      l2.add(b_base + 1, a_base + 2, bc.c1);  // -b- <- a-_1, a-_2
      l2.add(b_base + 1, a_base + 3, -bc.c2);
    }

  // Output layer: coordinate i sums b+ - (-b-) over the k copies.
  SparseBuilder l3(n, 2 * n * k);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t c = 0; c < k; ++c) {
      const std::size_t b_base = c * 2 * n + (i - 1) * 2;
      l3.add(i - 1, b_base, 1.0);
      l3.add(i - 1, b_base + 1, -1.0);
    }

  std::vector<AffineReluLayer> layers;
  layers.push_back({WeightMatrix(l1.finish()), ActivationKind::positive});
  layers.push_back({WeightMatrix(l2.finish()), ActivationKind::positive});
  layers.push_back({WeightMatrix(l3.finish()), ActivationKind::none});
  return SparseGeneratorNet{ReluNetwork(std::move(layers)), n, k};
}

SparseGeneratorNet build_one_sparse_net(std::size_t n) {
  return build_sparsity_net(n, 1);
}

namespace {

std::pair<double, double> encode_entry(std::size_t n, std::size_t index_1based,
                                       double value) {
  const double alpha = kPi / static_cast<double>(n + 1);
  double angle = static_cast<double>(index_1based) * alpha + alpha / 2;
  if (value < 0.0) angle += kPi;
  const double t = std::abs(value);
  return {t * std::sin(angle), t * std::cos(angle)};
}

}  // namespace

std::pair<double, double> encode_one_sparse(std::span<const double> z) {
  std::size_t nz = 0, where = 0;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] != 0.0) {
      ++nz;
      where = i;
    }
  if (nz != 1)
    throw std::invalid_argument("encode_one_sparse: input must have exactly one "
                                "nonzero coordinate, got " + std::to_string(nz));
  return encode_entry(z.size(), where + 1, z[where]);
}

std::vector<double> encode_k_sparse(std::span<const double> z,
                                    const SparseGeneratorNet& net) {
  if (z.size() != net.n)
    throw std::invalid_argument("encode_k_sparse: z has wrong dimension");
  std::vector<double> latent(2 * net.k, 0.0);
  std::size_t copy = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] == 0.0) continue;
    if (copy == net.k)
      throw std::invalid_argument("encode_k_sparse: input has more than k nonzeros");
    const auto [x1, x2] = encode_entry(net.n, i + 1, z[i]);
    latent[2 * copy] = x1;
    latent[2 * copy + 1] = x2;
    ++copy;
  }
  return latent;
}

double gadget_oracle(const GadgetParams& params, double x1, double x2) {
  const double t = std::hypot(x1, x2);
  if (t == 0.0) return 0.0;
  // The construction parameterizes (x1, x2) = (t sin(theta), t cos(theta)).
  double theta = std::atan2(x1, x2);
  if (theta < 0.0) theta += 2 * kPi;

  const double alpha = params.alpha;
  const double lo = static_cast<double>(params.index) * alpha;
  const auto bump = [&](double x) {
    const double arg = (x <= alpha / 2) ? x : alpha - x;
    return t * std::sin(arg) / std::sin(alpha / 2);
  };
  if (theta > lo && theta < lo + alpha) return bump(theta - lo);
  if (theta > kPi + lo && theta < kPi + lo + alpha) return -bump(theta - kPi - lo);
  return 0.0;
}

double trig_identity_residual(double beta, double theta, double alpha) {
  const double sa = std::sin(alpha), sh = std::sin(alpha / 2);
  if (std::abs(sa) < 1e-12 || std::abs(sh) < 1e-12)
    throw std::invalid_argument("trig_identity_residual: sin(alpha) and "
                                "sin(alpha/2) must be nonzero");
  const double lhs = std::sin(beta + alpha / 2 - theta) / sh - std::sin(beta - theta) / sa;
  const double rhs = std::sin(beta - theta + alpha) / sa;
  return std::abs(lhs - rhs);
}

}  // namespace gencs
