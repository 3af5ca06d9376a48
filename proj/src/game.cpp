#include "gencs/game.hpp"

#include <cmath>
#include <stdexcept>

#include "gencs/kernels.hpp"

namespace gencs {

GameConfig make_game_config(std::size_t t, double C, std::size_t set_size) {
  if (t < 1) throw std::invalid_argument("game: need t >= 1");
  if (set_size < 2) throw std::invalid_argument("game: need at least 2 codewords");
  GameConfig cfg;
  cfg.t = t;
  cfg.C = C;
  cfg.D = 16.0 * std::sqrt(3.0) * (C + 1.0);
  cfg.chunk_bits = 0;
  while ((std::size_t{2} << cfg.chunk_bits) <= set_size) ++cfg.chunk_bits;
  // chunk_bits = floor(log2 set_size); chunk values always index into Z.
  return cfg;
}

BobView bob_view(const GameInstance& inst) {
  BobView v;
  v.index = inst.index;
  v.suffix.assign(inst.y.begin() + static_cast<std::ptrdiff_t>(inst.index),
                  inst.y.end());
  return v;
}

std::size_t chunk_value(std::span<const std::uint8_t> y, std::size_t j,
                        std::size_t chunk_bits) {
  std::size_t v = 0;
  const std::size_t base = (j - 1) * chunk_bits;
  for (std::size_t b = 0; b < chunk_bits; ++b)
    v = (v << 1) | y[base + b];
  return v;
}

AliceMessage alice_encode(const GameInstance& inst, const GameConfig& cfg,
                          const std::vector<std::vector<double>>& Z,
                          const MeasurementEnsemble& ens) {
  if (inst.y.size() != cfg.d())
    throw std::invalid_argument("alice_encode: bit string has wrong length");
  AliceMessage out;
  out.x.assign(ens.n, 0.0);
  double weight = 1.0;
  for (std::size_t j = 1; j <= cfg.t; ++j) {
    weight *= cfg.D;  // D^j
    const std::size_t v = chunk_value(inst.y, j, cfg.chunk_bits);
    if (v >= Z.size())
      throw std::invalid_argument("alice_encode: chunk indexes past the set");
    const auto& zj = Z[v];
    for (std::size_t c = 0; c < ens.n; ++c) out.x[c] += weight * zj[c];
  }
  out.message.assign(ens.m, 0.0);
  kernels::matvec(ens.A_rounded, out.x, out.message);
  return out;
}

BobOutcome bob_decode(const BobView& view, const GameConfig& cfg,
                      std::span<const double> message,
                      const std::vector<std::vector<double>>& Z,
                      const Matrix& measured_Z, const MeasurementEnsemble& ens,
                      double R, Rng& rng) {
  const std::size_t cb = cfg.chunk_bits;
  const std::size_t j = (view.index + cb - 1) / cb;  // chunk containing bit i

  // Suffix bits reconstruct every chunk above j.
  std::vector<double> z(ens.n, 0.0);
  double weight = std::pow(cfg.D, static_cast<double>(j));
  double wl = weight;
  for (std::size_t l = j + 1; l <= cfg.t; ++l) {
    wl *= cfg.D;
    std::size_t v = 0;
    for (std::size_t b = 0; b < cb; ++b) {
      const std::size_t global = (l - 1) * cb + b + 1;  // 1-based bit position
      v = (v << 1) | view.suffix[global - view.index - 1];
    }
    const auto& zl = Z[v];
    for (std::size_t c = 0; c < ens.n; ++c) z[c] += wl * zl[c];
  }

  // (A'x - A'z) / D^j = A'w = A(w - s); smoothing u decouples s from A.
  std::vector<double> az(ens.m, 0.0);
  kernels::matvec(ens.A_rounded, z, az);
  BobOutcome out;
  out.chunk = j;
  out.u = rng.in_ball(ens.n, R / weight);
  std::vector<double> au(ens.m, 0.0);
  kernels::matvec(ens.A, out.u, au);
  std::vector<double> target(ens.m);
  for (std::size_t i = 0; i < ens.m; ++i)
    target[i] = (message[i] - az[i]) / weight - au[i];

  const RecoverResult rec = recover_measured(measured_Z, target);
  out.recovered_index = rec.index;
  const std::size_t value = rec.index & ((std::size_t{1} << cb) - 1);
  const std::size_t pos_in_chunk = view.index - (j - 1) * cb;  // 1-based
  out.bit = static_cast<int>((value >> (cb - pos_in_chunk)) & 1);
  return out;
}

PeelResult peel_decode(std::span<const double> Ax, const Matrix& A,
                       const std::vector<std::vector<double>>& Z, double D,
                       std::size_t t, double R) {
  if (Z.empty()) throw std::invalid_argument("peel_decode: empty codeword set");
  const Matrix measured = measure_candidates(A, Z);
  const double threshold = R / (2.0 * std::sqrt(6.0));

  PeelResult res;
  res.all_ok = true;
  std::vector<double> residual(Ax.begin(), Ax.end());
  std::vector<double> scaled(A.rows), image(A.rows);
  for (std::size_t l = t; l >= 1; --l) {
    const double weight = std::pow(D, static_cast<double>(l));
    for (std::size_t i = 0; i < A.rows; ++i) scaled[i] = residual[i] / weight;
    const RecoverResult rec = recover_measured(measured, scaled);
    PeelLayer layer;
    layer.layer = l;
    layer.index = rec.index;
    layer.distance = rec.distance;
    layer.ok = rec.distance <= threshold;
    res.all_ok = res.all_ok && layer.ok;
    res.layers.push_back(layer);
    kernels::matvec(A, Z[rec.index], image);
    for (std::size_t i = 0; i < A.rows; ++i) residual[i] -= weight * image[i];
  }
  return res;
}

GameSummary run_game_trials(const GameParams& params) {
  const double R =
      params.R > 0.0 ? params.R : std::sqrt(params.L * params.r * params.delta);
  Rng rng(params.seed);
  const WellSeparatedSet set =
      build_separated_set(params.L, params.r, params.k, params.n, R, rng.next_u64());
  return run_game_trials(params, set);
}

GameSummary run_game_trials(const GameParams& params, const WellSeparatedSet& set) {
  if (params.trials < 1) throw std::invalid_argument("game: trials must be >= 1");
  const double R = set.R;
  const GameConfig cfg = make_game_config(params.t, params.C, set.image_points.size());
  const std::size_t d = cfg.d();
  const auto& Z = set.image_points;

  GameSummary summary;
  summary.d = d;
  summary.m = params.m;
  summary.set_size = Z.size();
  summary.D = cfg.D;
  summary.R = R;
  summary.bits_sent_raw = params.m * 64;
  summary.bits_per_entry_analytic =
      static_cast<std::size_t>(params.bits) +
      static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(params.n)))) +
      static_cast<std::size_t>(std::ceil(static_cast<double>(params.t) * std::log2(cfg.D))) +
      1;
  summary.trials.resize(params.trials);

  Rng master(params.seed);
  const std::int64_t trials = static_cast<std::int64_t>(params.trials);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t ti = 0; ti < trials; ++ti) {
    Rng trial = master.fork(static_cast<std::uint64_t>(ti));

    // Common randomness: the measurement ensemble is shared by both parties.
    const MeasurementEnsemble ens =
        make_ensemble(params.m, params.n, params.bits, trial.next_u64());
    const Matrix measured = measure_candidates(ens.A, Z);

    GameInstance inst;
    inst.y.resize(d);
    for (auto& b : inst.y) b = static_cast<std::uint8_t>(trial.next_u64() & 1);
    inst.index = 1 + static_cast<std::size_t>(trial.below(d));

    AliceMessage msg = alice_encode(inst, cfg, Z, ens);
    if (params.noise_sigma > 0.0) {
      for (auto& xc : msg.x) xc += params.noise_sigma * trial.gaussian();
      msg.message.assign(ens.m, 0.0);
      kernels::matvec(ens.A_rounded, msg.x, msg.message);
    }

    const BobView view = bob_view(inst);
    BobOutcome outcome =
        bob_decode(view, cfg, msg.message, Z, measured, ens, R, trial);

    TrialRecord rec;
    rec.trial = static_cast<std::size_t>(ti);
    rec.chunk = outcome.chunk;
    rec.success = outcome.bit == static_cast<int>(inst.y[inst.index - 1]);
    rec.bits_sent = params.m * 64;

    // Diagnostics computed with full knowledge of both sides.
    const std::size_t j = outcome.chunk;
    const double Dj = std::pow(cfg.D, static_cast<double>(j));
    std::vector<double> w(params.n, 0.0);
    {
      double wl = 1.0;
      for (std::size_t l = 1; l <= j; ++l) {
        wl *= cfg.D;
        const auto& zl = Z[chunk_value(inst.y, l, cfg.chunk_bits)];
        for (std::size_t c = 0; c < params.n; ++c) w[c] += (wl / Dj) * zl[c];
      }
      if (params.noise_sigma > 0.0)
        for (std::size_t c = 0; c < params.n; ++c) w[c] = 0.0;  // skip when perturbed
    }
    rec.w_norm = norm2(w);
    double bound = 0.0, dp = 1.0;
    for (std::size_t l = 0; l < j; ++l) {
      bound += R * dp;
      dp /= cfg.D;
    }
    rec.w_norm_bound = bound;

    const double u_norm = norm2(outcome.u);
    const double nn = static_cast<double>(params.n) * static_cast<double>(params.n);
    rec.u_norm_ok = u_norm <= (R / Dj) * (1.0 - 1.0 / nn);

    if (params.noise_sigma == 0.0) {
      const WitnessResult wit =
          discretization_witness(ens.A, ens.A_rounded, params.bits, w);
      // margin: distance from the point Bob effectively decodes to the truth.
      const auto& truth = Z[chunk_value(inst.y, j, cfg.chunk_bits)];
      std::vector<double> eff(params.n);
      for (std::size_t c = 0; c < params.n; ++c)
        eff[c] = w[c] - wit.s[c] - outcome.u[c];
      rec.margin = dist2(eff, truth);

      // The decoder's input equals A(w - s - u) up to floating point noise.
      std::vector<double> az(params.m, 0.0), direct(params.m, 0.0);
      kernels::matvec(ens.A_rounded, w, az);
      std::vector<double> au(params.m, 0.0);
      kernels::matvec(ens.A, outcome.u, au);
      std::vector<double> decoder_input(params.m);
      {
        std::vector<double> zsum(params.n, 0.0);
        double wl = Dj;
        for (std::size_t l = j + 1; l <= cfg.t; ++l) {
          wl *= cfg.D;
          const auto& zl = Z[chunk_value(inst.y, l, cfg.chunk_bits)];
          for (std::size_t c = 0; c < params.n; ++c) zsum[c] += wl * zl[c];
        }
        std::vector<double> azc(params.m, 0.0);
        kernels::matvec(ens.A_rounded, zsum, azc);
        for (std::size_t i = 0; i < params.m; ++i)
          decoder_input[i] = (msg.message[i] - azc[i]) / Dj - au[i];
      }
      kernels::matvec(ens.A, eff, direct);
      rec.linearity_residual = dist2(decoder_input, direct);
    }

    summary.trials[static_cast<std::size_t>(ti)] = rec;
  }

  std::size_t wins = 0;
  for (const auto& rec : summary.trials) wins += rec.success ? 1 : 0;
  summary.success_rate =
      static_cast<double>(wins) / static_cast<double>(params.trials);
  return summary;
}

}  // namespace gencs
