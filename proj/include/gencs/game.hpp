#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gencs/rng.hpp"
#include "gencs/sensing.hpp"
#include "gencs/separated_set.hpp"

namespace gencs {

// One-way indexing game: Alice holds d bits, Bob holds an index i plus the
// suffix after i and must output bit i. Alice encodes her bits as a
// D-power-weighted sum of codewords from a shared well-separated set and
// sends the rounded measurement of that sum.

struct GameConfig {
  std::size_t t = 0;          // number of chunks / layers
  std::size_t chunk_bits = 0; // floor(log2 |Z|)
  double D = 0.0;             // layer weight, 16 sqrt(3) (C+1)
  double C = 0.0;             // approximation factor
  std::size_t d() const { return t * chunk_bits; }
};

GameConfig make_game_config(std::size_t t, double C, std::size_t set_size);

struct GameInstance {
  std::vector<std::uint8_t> y;  // d bits
  std::size_t index = 0;        // Bob's 1-based bit index in [1, d]
};

// What Bob legitimately sees: his index and the bits after it.
struct BobView {
  std::size_t index = 0;
  std::vector<std::uint8_t> suffix;  // y[index+1 .. d]
};

BobView bob_view(const GameInstance& inst);

// Chunk value (big-endian bit block) of chunk j in [1, t].
std::size_t chunk_value(std::span<const std::uint8_t> y, std::size_t j,
                        std::size_t chunk_bits);

struct AliceMessage {
  std::vector<double> x;        // layered sum, n entries
  std::vector<double> message;  // A_rounded x, m entries
};

AliceMessage alice_encode(const GameInstance& inst, const GameConfig& cfg,
                          const std::vector<std::vector<double>>& Z,
                          const MeasurementEnsemble& ens);

struct BobOutcome {
  int bit = 0;
  std::size_t chunk = 0;            // j
  std::size_t recovered_index = 0;  // argmin index into Z
  std::vector<double> u;            // smoothing vector
};

BobOutcome bob_decode(const BobView& view, const GameConfig& cfg,
                      std::span<const double> message,
                      const std::vector<std::vector<double>>& Z,
                      const Matrix& measured_Z, const MeasurementEnsemble& ens,
                      double R, Rng& rng);

// Iteratively recovers the layer codewords of a D-weighted sum from its
// measurement, heaviest layer first.
struct PeelLayer {
  std::size_t layer = 0;  // t, t-1, ..., 1 in report order
  std::size_t index = 0;
  double distance = 0.0;
  bool ok = false;  // argmin distance within R/(2 sqrt(6))
};

struct PeelResult {
  std::vector<PeelLayer> layers;  // top-down
  bool all_ok = false;
};

PeelResult peel_decode(std::span<const double> Ax, const Matrix& A,
                       const std::vector<std::vector<double>>& Z, double D,
                       std::size_t t, double R);

struct GameParams {
  std::size_t n = 64, k = 4;
  double L = 64.0, r = 1.0, delta = 8.0, C = 1.0;
  double R = 0.0;  // 0 means sqrt(L r delta)
  std::size_t m = 48;
  int bits = 16;
  std::size_t t = 3;
  std::size_t trials = 300;
  std::uint64_t seed = 1;
  double noise_sigma = 0.0;  // optional Gaussian perturbation of Alice's x
};

struct TrialRecord {
  std::size_t trial = 0;
  std::size_t chunk = 0;  // j
  bool success = false;
  std::size_t bits_sent = 0;        // m * 64 (raw fixed-point entries)
  double margin = 0.0;              // ||(w - s - u) - x_j||
  bool u_norm_ok = false;           // ||u|| <= (R/D^j)(1 - 1/n^2)
  double linearity_residual = 0.0;  // decoder input vs A(w - s - u)
  double w_norm = 0.0;
  double w_norm_bound = 0.0;  // R * sum_{l<j} D^{-l}
};

struct GameSummary {
  double success_rate = 0.0;
  std::size_t d = 0;
  std::size_t m = 0;
  std::size_t set_size = 0;
  std::size_t bits_sent_raw = 0;       // per trial: m * 64
  std::size_t bits_per_entry_analytic = 0;  // b + ceil(log2 n) + ceil(t log2 D) + 1
  double D = 0.0;
  double R = 0.0;
  std::vector<TrialRecord> trials;
};

GameSummary run_game_trials(const GameParams& params, const WellSeparatedSet& set);
GameSummary run_game_trials(const GameParams& params);

}  // namespace gencs
