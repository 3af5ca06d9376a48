#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gencs/matrix.hpp"
#include "gencs/sparse_gen.hpp"

namespace gencs {

// Matrix with m orthonormal rows; the row space is uniformly distributed.
Matrix sample_orthonormal(std::size_t m, std::size_t n, std::uint64_t seed);

// i.i.d. N(0, variance) entries.
Matrix gaussian_matrix(std::size_t m, std::size_t n, double variance,
                       std::uint64_t seed);

// Entrywise fixed-point rounding to b fractional bits, round-to-nearest with
// ties to even, so the result is bit-reproducible.
Matrix discretize(const Matrix& a, int bits);

// Orthonormal-row matrix together with its b-bit rounding.
struct MeasurementEnsemble {
  Matrix A;
  Matrix A_rounded;
  int bits = 0;
  std::size_t m = 0, n = 0;
};

MeasurementEnsemble make_ensemble(std::size_t m, std::size_t n, int bits,
                                  std::uint64_t seed);

// Witness s with A_rounded v = A (v - s); requires orthonormal rows.
struct WitnessResult {
  std::vector<double> s;
  double identity_residual = 0.0;  // || A_rounded v - A (v - s) ||
  double s_norm = 0.0;
  double s_norm_bound = 0.0;       // n 2^{-b} ||v||
};

WitnessResult discretization_witness(const Matrix& A, const Matrix& A_rounded,
                                     int bits, std::span<const double> v);

// Exhaustive minimization over a finite candidate set: index of
// argmin_z ||A z - y||, ties broken by lowest index.
struct RecoverResult {
  std::size_t index = 0;
  double distance = 0.0;
};

RecoverResult recover_over_net(const Matrix& A, std::span<const double> y,
                               const std::vector<std::vector<double>>& Z);
// Same argmin over precomputed measured candidates (rows of AZ).
RecoverResult recover_measured(const Matrix& AZ, std::span<const double> y);
Matrix measure_candidates(const Matrix& A,
                          const std::vector<std::vector<double>>& Z);

// Empirical check that measurement preserves distance-to-nearest-net-point:
// samples x within delta of the image of a latent net M, finds the nearest
// image point x', and reports the fraction with ||A(x - x')|| <= c delta.
struct SrecReport {
  double pass_rate = 0.0;
  double max_ratio = 0.0;  // max ||A(x - x')|| / delta
};

SrecReport srec_check(
    const Matrix& A, const std::vector<std::vector<double>>& net_latents,
    const std::function<std::vector<double>(std::span<const double>)>& G,
    double delta, std::size_t trials, std::uint64_t seed, double c = 10.0);

struct RecoveryConfig {
  std::size_t restarts = 25;
  std::size_t max_steps = 400;
  double step_size = 0.05;
  double tolerance = 1e-10;
  std::uint64_t seed = 1;
};

// Multi-restart subgradient descent on f(x) = ||A G(x) - y||^2 over the
// latent space of a sparsity generator. The first restart starts from the
// encoding of the thresholded backprojection A^T y; the rest are random.
struct LatentRecoverResult {
  std::vector<double> latent;
  std::vector<double> reconstruction;
  double objective = 0.0;
  bool converged = false;
  std::size_t restarts_used = 0;
};

LatentRecoverResult latent_recover(
    const SparseGeneratorNet& net, const Matrix& A, std::span<const double> y,
    const RecoveryConfig& config,
    const std::vector<std::vector<double>>& initial_guesses = {});

}  // namespace gencs
