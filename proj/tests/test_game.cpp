#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gencs/game.hpp"
#include "gencs/rng.hpp"

using namespace gencs;

namespace {

WellSeparatedSet test_set() {
  // L r / R = 16 path points over block 16; |Z| = 121.
  return build_separated_set(64.0, 1.0, 4, 64, 4.0, 101);
}

GameParams base_params() {
  GameParams p;
  p.n = 64;
  p.k = 4;
  p.L = 64.0;
  p.r = 1.0;
  p.delta = 8.0;
  p.C = 1.0;
  p.R = 4.0;
  p.m = 48;
  p.bits = 16;
  p.t = 3;
  p.trials = 40;
  p.seed = 7;
  return p;
}

}  // namespace

TEST_CASE("game config: D constant and chunk width") {
  const GameConfig cfg = make_game_config(3, 1.0, 121);
  CHECK(cfg.D == doctest::Approx(16.0 * std::sqrt(3.0) * 2.0).epsilon(1e-15));
  CHECK(cfg.chunk_bits == 6);  // floor(log2 121)
  CHECK(cfg.d() == 18);
  // 2 (1 + C) / D = 1 / (8 sqrt(3))
  CHECK(2.0 * 2.0 / cfg.D == doctest::Approx(1.0 / (8.0 * std::sqrt(3.0))));
}

TEST_CASE("chunk_value: big-endian bit blocks") {
  const std::vector<std::uint8_t> y = {1, 0, 1, 0, 1, 1};
  CHECK(chunk_value(y, 1, 3) == 5);  // 101
  CHECK(chunk_value(y, 2, 3) == 3);  // 011
  CHECK(chunk_value(y, 1, 2) == 2);
  CHECK(chunk_value(y, 3, 2) == 3);
}

TEST_CASE("alice_encode: single chunk is D * z, all-zero bits give index 0") {
  const WellSeparatedSet set = test_set();
  const GameConfig cfg = make_game_config(1, 1.0, set.image_points.size());
  const MeasurementEnsemble ens = make_ensemble(16, 64, 16, 11);

  GameInstance inst;
  inst.y.assign(cfg.d(), 0);
  inst.index = 1;
  const AliceMessage msg = alice_encode(inst, cfg, set.image_points, ens);
  for (std::size_t c = 0; c < 64; ++c)
    CHECK(msg.x[c] == doctest::Approx(cfg.D * set.image_points[0][c]).epsilon(1e-12));
}

TEST_CASE("alice_encode: two chunks match hand-built D z_a + D^2 z_b") {
  const WellSeparatedSet set = test_set();
  const GameConfig cfg = make_game_config(2, 1.0, set.image_points.size());
  const MeasurementEnsemble ens = make_ensemble(16, 64, 16, 12);

  GameInstance inst;
  inst.y.assign(cfg.d(), 0);
  // chunk 1 = 5, chunk 2 = 9 (big-endian 6-bit blocks)
  inst.y[3] = 1;
  inst.y[5] = 1;            // 000101
  inst.y[6 + 2] = 1;
  inst.y[6 + 5] = 1;        // 001001
  inst.index = 1;

  const AliceMessage msg = alice_encode(inst, cfg, set.image_points, ens);
  for (std::size_t c = 0; c < 64; ++c) {
    const double want = cfg.D * set.image_points[5][c] +
                        cfg.D * cfg.D * set.image_points[9][c];
    CHECK(msg.x[c] == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("lossless channel: m = n and large b decodes every bit") {
  const WellSeparatedSet set = test_set();
  GameParams p = base_params();
  p.m = 64;
  p.bits = 40;
  p.trials = 60;
  const GameSummary summary = run_game_trials(p, set);
  CHECK(summary.success_rate == 1.0);
}

TEST_CASE("top chunk exercises the empty-suffix branch") {
  const WellSeparatedSet set = test_set();
  const GameConfig cfg = make_game_config(2, 1.0, set.image_points.size());
  const MeasurementEnsemble ens = make_ensemble(64, 64, 30, 13);
  const Matrix measured = measure_candidates(ens.A, set.image_points);

  Rng rng(14);
  GameInstance inst;
  inst.y.assign(cfg.d(), 0);
  for (auto& b : inst.y) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
  inst.index = cfg.d();  // last bit lives in the top chunk; suffix is empty

  const AliceMessage msg = alice_encode(inst, cfg, set.image_points, ens);
  const BobView view = bob_view(inst);
  CHECK(view.suffix.empty());
  BobOutcome out = bob_decode(view, cfg, msg.message, set.image_points, measured,
                              ens, set.R, rng);
  CHECK(out.chunk == cfg.t);
  CHECK(out.bit == static_cast<int>(inst.y[inst.index - 1]));
}

TEST_CASE("protocol invariants hold on every trial") {
  const WellSeparatedSet set = test_set();
  GameParams p = base_params();
  p.trials = 80;
  const GameSummary summary = run_game_trials(p, set);

  const double margin_bound = set.R / (2.0 * std::sqrt(6.0));
  std::size_t u_ok = 0;
  for (const auto& rec : summary.trials) {
    CHECK(rec.bits_sent == p.m * 64);
    CHECK(rec.margin < margin_bound);
    CHECK(rec.linearity_residual <= 1e-9);
    CHECK(rec.w_norm <= rec.w_norm_bound * (1 + 1e-12));
    u_ok += rec.u_norm_ok ? 1 : 0;
  }
  // Volume-ratio claim: ||u|| <= (R/D^j)(1 - 1/n^2) with frequency >= 1 - 1/n;
  // asserted here with slack, and tightly in the dedicated sampler test below.
  CHECK(static_cast<double>(u_ok) / static_cast<double>(p.trials) >=
        1.0 - 3.0 / static_cast<double>(p.n));
}

TEST_CASE("ball sampler: norm cutoff frequency matches the volume ratio") {
  const std::size_t n = 16;
  Rng rng(15);
  std::size_t ok = 0;
  const std::size_t samples = 1000000;
  for (std::size_t s = 0; s < samples; ++s) {
    const std::vector<double> u = rng.in_ball(n, 1.0);
    double nrm2 = 0.0;
    for (double v : u) nrm2 += v * v;
    if (std::sqrt(nrm2) <= 1.0 - 1.0 / static_cast<double>(n * n)) ++ok;
  }
  // (1 - 1/n^2)^n > 1 - 1/n strictly; the empirical rate clears 1 - 1/n.
  CHECK(static_cast<double>(ok) / static_cast<double>(samples) >=
        1.0 - 1.0 / static_cast<double>(n));
}

TEST_CASE("peel_decode: single layer and exact multi-layer recovery") {
  const WellSeparatedSet set = test_set();
  const double D = 16.0 * std::sqrt(3.0) * 2.0;
  const Matrix A = sample_orthonormal(64, 64, 16);

  Rng rng(17);
  for (std::size_t t = 1; t <= 5; ++t) {
    std::vector<std::size_t> truth(t);
    for (auto& v : truth) v = static_cast<std::size_t>(rng.below(set.image_points.size()));
    std::vector<double> x(64, 0.0);
    double w = 1.0;
    for (std::size_t l = 1; l <= t; ++l) {
      w *= D;
      for (std::size_t c = 0; c < 64; ++c)
        x[c] += w * set.image_points[truth[l - 1]][c];
    }
    std::vector<double> ax(64, 0.0);
    for (std::size_t i = 0; i < 64; ++i)
      for (std::size_t c = 0; c < 64; ++c) ax[i] += A(i, c) * x[c];

    const PeelResult res = peel_decode(ax, A, set.image_points, D, t, set.R);
    CHECK(res.all_ok);
    REQUIRE(res.layers.size() == t);
    for (std::size_t pos = 0; pos < t; ++pos) {
      CHECK(res.layers[pos].layer == t - pos);
      CHECK(res.layers[pos].index == truth[t - pos - 1]);
    }
  }
}

TEST_CASE("peel_decode: corrupting a layer breaks that log position onward") {
  const WellSeparatedSet set = test_set();
  const double D = 16.0 * std::sqrt(3.0) * 2.0;
  const Matrix A = sample_orthonormal(64, 64, 18);
  const std::size_t t = 4;

  Rng rng(19);
  std::vector<std::size_t> truth(t);
  for (auto& v : truth) v = static_cast<std::size_t>(rng.below(set.image_points.size()));

  for (std::size_t corrupt = 1; corrupt <= t; ++corrupt) {
    std::vector<double> x(64, 0.0);
    double w = 1.0;
    for (std::size_t l = 1; l <= t; ++l) {
      w *= D;
      for (std::size_t c = 0; c < 64; ++c)
        x[c] += w * set.image_points[truth[l - 1]][c];
    }
    // Push layer `corrupt` off the codeword grid by half a radius.
    const std::vector<double> junk = rng.on_sphere(64, set.R * 0.5);
    const double wc = std::pow(D, static_cast<double>(corrupt));
    for (std::size_t c = 0; c < 64; ++c) x[c] += wc * junk[c];

    std::vector<double> ax(64, 0.0);
    for (std::size_t i = 0; i < 64; ++i)
      for (std::size_t c = 0; c < 64; ++c) ax[i] += A(i, c) * x[c];

    const PeelResult res = peel_decode(ax, A, set.image_points, D, t, set.R);
    CHECK_FALSE(res.all_ok);
    const std::size_t broken_pos = t - corrupt;  // position in the top-down log
    for (std::size_t pos = 0; pos < res.layers.size(); ++pos) {
      if (pos < broken_pos)
        CHECK(res.layers[pos].ok);
      else
        CHECK_FALSE(res.layers[pos].ok);
    }
  }
}

TEST_CASE("run_game_trials: accounting identities and determinism") {
  const WellSeparatedSet set = test_set();
  GameParams p = base_params();
  p.trials = 20;
  const GameSummary a = run_game_trials(p, set);
  const GameSummary b = run_game_trials(p, set);

  CHECK(a.bits_sent_raw == p.m * 64);
  CHECK(a.d == 18);
  CHECK(a.set_size == 121);
  CHECK(a.success_rate == b.success_rate);
  REQUIRE(a.trials.size() == b.trials.size());
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    CHECK(a.trials[i].success == b.trials[i].success);
    CHECK(a.trials[i].margin == b.trials[i].margin);
    CHECK(a.trials[i].chunk == b.trials[i].chunk);
  }
}

TEST_CASE("run_game_trials: protocol succeeds at proper m") {
  const WellSeparatedSet set = test_set();
  GameParams p = base_params();
  p.trials = 120;
  const GameSummary summary = run_game_trials(p, set);
  CHECK(summary.success_rate >= 2.0 / 3.0);
}
