#pragma once

#include <cstdint>
#include <string>

#include "gencs/game.hpp"
#include "gencs/sparse_gen.hpp"

namespace gencs::experiments {

// Each driver returns the full CSV document (comment header with the config
// and seed, then one row per trial). Identical config and seed give
// byte-identical output regardless of thread count.

// Round-trip and sparsity check of the sparsity generator.
// Columns: trial,n,k,max_abs_error,output_sparsity
std::string verify_sparse_csv(std::size_t n, std::size_t k, std::size_t trials,
                              std::uint64_t seed);

struct SenseParams {
  std::size_t m = 32;
  int bits = 16;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t pool = 256;     // candidate k-sparse signals for the net solver
  double noise = 0.01;        // perturbation radius added to the true signal
  bool timing = false;        // real wall times break byte determinism
  RecoveryConfig recovery;
};

// Runs both solvers per trial on the same measured signal.
// Columns: trial,m,b,method,residual,success,wall_time_ms
std::string sense_csv(const SparseGeneratorNet& net, const SenseParams& params);

// Columns: trial,j,success,bits_sent,margin,u_norm_ok
std::string game_csv(const GameParams& params);

// Columns: trial,layer,max_stretch,violated
std::string lipschitz_csv(std::size_t depth, std::size_t width,
                          std::size_t input_dim, std::size_t points,
                          double epsilon, std::size_t trials, std::uint64_t seed);

}  // namespace gencs::experiments
