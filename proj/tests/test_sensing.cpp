#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gencs/rng.hpp"
#include "gencs/sensing.hpp"

using namespace gencs;

TEST_CASE("sample_orthonormal: square case is orthogonal both ways") {
  const Matrix a = sample_orthonormal(6, 6, 1);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      double rr = 0.0, cc = 0.0;
      for (std::size_t c = 0; c < 6; ++c) {
        rr += a(i, c) * a(j, c);
        cc += a(c, i) * a(c, j);
      }
      const double want = i == j ? 1.0 : 0.0;
      CHECK(rr == doctest::Approx(want).epsilon(1e-10));
      CHECK(cc == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("sample_orthonormal: single row has unit norm") {
  const Matrix a = sample_orthonormal(1, 32, 2);
  double nrm = 0.0;
  for (double v : a.a) nrm += v * v;
  CHECK(nrm == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sample_orthonormal: contraction on random vectors") {
  const Matrix a = sample_orthonormal(8, 32, 3);
  Rng rng(4);
  std::vector<double> av(8);
  for (int rep = 0; rep < 100; ++rep) {
    const std::vector<double> v = rng.gaussian_vector(32);
    for (std::size_t i = 0; i < 8; ++i) {
      double acc = 0.0;
      for (std::size_t c = 0; c < 32; ++c) acc += a(i, c) * v[c];
      av[i] = acc;
    }
    CHECK(norm2(av) <= norm2(v) * (1 + 1e-12));
  }
}

TEST_CASE("discretize: grid examples") {
  Matrix a(1, 3);
  a(0, 0) = 0.3;
  a(0, 1) = 0.25;
  a(0, 2) = -0.3;
  const Matrix r2 = discretize(a, 2);
  CHECK(r2(0, 0) == 0.25);
  CHECK(r2(0, 1) == 0.25);  // already a multiple of 2^-2
  CHECK(r2(0, 2) == -0.25);

  const Matrix r40 = discretize(a, 40);
  for (std::size_t c = 0; c < 3; ++c)
    CHECK(std::abs(r40(0, c) - a(0, c)) <= std::ldexp(1.0, -41));
}

TEST_CASE("discretize: every entry is a multiple of 2^-b") {
  const Matrix a = sample_orthonormal(4, 16, 5);
  for (int b : {4, 8, 12}) {
    const Matrix r = discretize(a, b);
    const double up = std::ldexp(1.0, b);
    for (double v : r.a) CHECK(v * up == std::nearbyint(v * up));
  }
}

TEST_CASE("discretization witness: identity and norm bound") {
  Rng rng(6);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix a = sample_orthonormal(8, 32, rng.next_u64());
    for (int b : {4, 8, 12}) {
      const Matrix ar = discretize(a, b);
      const std::vector<double> v = rng.gaussian_vector(32);
      const WitnessResult w = discretization_witness(a, ar, b, v);
      CHECK(w.identity_residual <= 1e-9);
      CHECK(w.s_norm <= w.s_norm_bound);
    }
  }
}

TEST_CASE("discretization witness: degenerate cases") {
  const Matrix a = sample_orthonormal(4, 8, 7);
  const std::vector<double> zero(8, 0.0);
  const WitnessResult w0 = discretization_witness(a, a, 8, zero);
  CHECK(w0.s_norm == 0.0);

  Rng rng(8);
  const std::vector<double> v = rng.gaussian_vector(8);
  const WitnessResult ws = discretization_witness(a, a, 8, v);  // A' = A
  CHECK(ws.s_norm <= 1e-12);

  Matrix bad(2, 4);
  bad(0, 0) = 1.0;
  bad(1, 0) = 1.0;  // rows not orthonormal
  CHECK_THROWS_AS(discretization_witness(bad, bad, 4, std::vector<double>(4, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("recover_over_net: exact measurements and singleton sets") {
  Rng rng(9);
  const Matrix a = sample_orthonormal(16, 16, 10);
  std::vector<std::vector<double>> Z;
  for (int i = 0; i < 10; ++i) Z.push_back(rng.gaussian_vector(16));

  std::vector<double> y(16, 0.0);
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t c = 0; c < 16; ++c) y[i] += a(i, c) * Z[7][c];
  const RecoverResult rec = recover_over_net(a, y, Z);
  CHECK(rec.index == 7);
  CHECK(rec.distance <= 1e-9);

  const std::vector<std::vector<double>> single{Z[3]};
  CHECK(recover_over_net(a, y, single).index == 0);
  CHECK_THROWS_AS(recover_over_net(a, y, {}), std::invalid_argument);
}

TEST_CASE("recover_over_net: noisy Gaussian measurements, >= 3/4 success") {
  Rng rng(11);
  const std::size_t n = 64;
  std::vector<std::vector<double>> Z;
  for (int i = 0; i < 32; ++i) Z.push_back(rng.on_sphere(n, 4.0));
  const std::size_t m = 28;  // ~ k log |Z|

  std::size_t good = 0;
  const std::size_t trials = 200;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng tr = rng.fork(t);
    const Matrix A = gaussian_matrix(m, n, 1.0 / static_cast<double>(m), tr.next_u64());
    const std::size_t truth = static_cast<std::size_t>(tr.below(Z.size()));
    std::vector<double> x = Z[truth];
    const std::vector<double> pert = tr.in_ball(n, 0.05);
    for (std::size_t c = 0; c < n; ++c) x[c] += pert[c];
    std::vector<double> y(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t c = 0; c < n; ++c) y[i] += A(i, c) * x[c];
    if (recover_over_net(A, y, Z).index == truth) ++good;
  }
  CHECK(static_cast<double>(good) / trials >= 0.75);
}

TEST_CASE("gaussian measurement: E ||A v||^2 = ||v||^2 at variance 1/m") {
  Rng rng(12);
  const std::size_t m = 24, n = 48;
  const std::vector<double> v = rng.on_sphere(n, 3.0);
  double acc = 0.0;
  const std::size_t samples = 10000;
  for (std::size_t s = 0; s < samples; ++s) {
    const Matrix A =
        gaussian_matrix(m, n, 1.0 / static_cast<double>(m), rng.next_u64());
    std::vector<double> av(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t c = 0; c < n; ++c) av[i] += A(i, c) * v[c];
    acc += dot(av, av);
  }
  const double mean = acc / static_cast<double>(samples);
  CHECK(mean == doctest::Approx(9.0).epsilon(0.10));
}

TEST_CASE("srec_check: exact points and square isometry") {
  const SparseGeneratorNet net = build_sparsity_net(16, 2);
  std::vector<std::vector<double>> latents;
  Rng rng(13);
  for (int i = 0; i < 12; ++i) latents.push_back(rng.gaussian_vector(4));
  const auto G = [&](std::span<const double> x) { return net.forward(x); };

  const Matrix square = sample_orthonormal(16, 16, 14);
  const SrecReport exact = srec_check(square, latents, G, 1e-12, 40, 15);
  CHECK(exact.pass_rate == 1.0);

  // With m = n the measured distance equals the signal distance, so the
  // ratio never exceeds 1 regardless of delta.
  const SrecReport iso = srec_check(square, latents, G, 0.3, 60, 16);
  CHECK(iso.max_ratio <= 1.0 + 1e-9);
  CHECK(iso.pass_rate == 1.0);
}

TEST_CASE("srec_check: gaussian rows at m ~ 4 k log(Lr/delta)") {
  const SparseGeneratorNet net = build_sparsity_net(32, 4);
  std::vector<std::vector<double>> latents;
  Rng rng(17);
  for (int i = 0; i < 24; ++i) {
    std::vector<double> z(32, 0.0);
    std::size_t placed = 0;
    while (placed < 4) {
      const std::size_t at = static_cast<std::size_t>(rng.below(32));
      if (z[at] != 0.0) continue;
      z[at] = rng.uniform(0.5, 2.0) * (rng.next_u64() & 1 ? 1 : -1);
      ++placed;
    }
    latents.push_back(encode_k_sparse(z, net));
  }
  const auto G = [&](std::span<const double> x) { return net.forward(x); };

  const std::size_t m = 4 * 4 * 5;  // k = 4, log2(L r / delta) ~ 5
  const Matrix A = gaussian_matrix(m, 32, 1.0 / static_cast<double>(m), 18);
  const SrecReport rep = srec_check(A, latents, G, 0.05, 100, 19);
  CHECK(rep.pass_rate >= 0.9);
}

TEST_CASE("latent_recover: seeded at the truth, zero-residual fixed point") {
  const SparseGeneratorNet net = build_sparsity_net(24, 3);
  Rng rng(20);
  std::vector<double> z(24, 0.0);
  z[3] = 1.5;
  z[11] = -0.7;
  z[19] = 2.2;
  const std::vector<double> x0 = encode_k_sparse(z, net);

  const Matrix A = gaussian_matrix(12, 24, 1.0 / 12.0, rng.next_u64());
  std::vector<double> y(12, 0.0);
  const std::vector<double> gx = net.forward(x0);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t c = 0; c < 24; ++c) y[i] += A(i, c) * gx[c];

  RecoveryConfig cfg;
  cfg.restarts = 1;
  cfg.tolerance = 1e-12;
  const LatentRecoverResult res = latent_recover(net, A, y, cfg, {x0});
  CHECK(res.converged);
  CHECK(res.objective <= 1e-12);
}

TEST_CASE("latent_recover: y = 0 returns the zero minimum") {
  const SparseGeneratorNet net = build_sparsity_net(16, 2);
  const Matrix A = gaussian_matrix(8, 16, 1.0 / 8.0, 21);
  RecoveryConfig cfg;
  const LatentRecoverResult res =
      latent_recover(net, A, std::vector<double>(8, 0.0), cfg);
  CHECK(res.converged);
  CHECK(res.objective == 0.0);
  for (double v : res.reconstruction) CHECK(v == 0.0);
}

TEST_CASE("latent_recover: objective never increases across accepted steps") {
  // Indirect check: final objective is no worse than every initial guess.
  const SparseGeneratorNet net = build_sparsity_net(16, 2);
  Rng rng(22);
  const Matrix A = gaussian_matrix(10, 16, 0.1, rng.next_u64());
  const std::vector<double> y = rng.gaussian_vector(10);

  RecoveryConfig cfg;
  cfg.restarts = 6;
  cfg.max_steps = 60;
  std::vector<std::vector<double>> guesses;
  for (int i = 0; i < 3; ++i) guesses.push_back(rng.gaussian_vector(4));
  const LatentRecoverResult res = latent_recover(net, A, y, cfg, guesses);
  for (const auto& g : guesses) {
    std::vector<double> gx = net.forward(g);
    std::vector<double> ax(10, 0.0);
    for (std::size_t i = 0; i < 10; ++i)
      for (std::size_t c = 0; c < 16; ++c) ax[i] += A(i, c) * gx[c];
    double f = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
      const double d = ax[i] - y[i];
      f += d * d;
    }
    CHECK(res.objective <= f + 1e-12);
  }
}

TEST_CASE("latent_recover: exact k-sparse signals, 70% at m = 6 k log2 n") {
  const std::size_t n = 64, k = 3;
  const SparseGeneratorNet net = build_sparsity_net(n, k);
  const std::size_t m = 6 * k * 6;  // 6 k log2(64) = 108

  Rng rng(23);
  std::size_t good = 0;
  const std::size_t trials = 100;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng tr = rng.fork(t);
    std::vector<double> z(n, 0.0);
    std::size_t placed = 0;
    while (placed < k) {
      const std::size_t at = static_cast<std::size_t>(tr.below(n));
      if (z[at] != 0.0) continue;
      z[at] = tr.uniform(0.5, 2.0) * (tr.next_u64() & 1 ? 1 : -1);
      ++placed;
    }
    const Matrix A =
        gaussian_matrix(m, n, 1.0 / static_cast<double>(m), tr.next_u64());
    std::vector<double> y(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t c = 0; c < n; ++c) y[i] += A(i, c) * z[c];

    RecoveryConfig cfg;
    cfg.restarts = 12;
    cfg.max_steps = 300;
    cfg.seed = tr.next_u64();
    const LatentRecoverResult res = latent_recover(net, A, y, cfg);
    if (dist2(res.reconstruction, z) <= 1e-3) ++good;
  }
  CHECK(static_cast<double>(good) / trials >= 0.70);
}
