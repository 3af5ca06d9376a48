#include "gencs/experiments.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "gencs/io.hpp"
#include "gencs/kernels.hpp"
#include "gencs/rng.hpp"
#include "gencs/stretch.hpp"

namespace gencs::experiments {

namespace {

// Random k-sparse vector: k distinct coordinates, log-uniform magnitudes in
// [10^lo, 10^hi], random signs.
std::vector<double> random_sparse(Rng& rng, std::size_t n, std::size_t k,
                                  double lo_exp, double hi_exp) {
  std::vector<double> z(n, 0.0);
  std::size_t placed = 0;
  while (placed < k) {
    const std::size_t i = static_cast<std::size_t>(rng.below(n));
    if (z[i] != 0.0) continue;
    const double mag = std::pow(10.0, rng.uniform(lo_exp, hi_exp));
    z[i] = (rng.next_u64() & 1) ? mag : -mag;
    ++placed;
  }
  return z;
}

}  // namespace

std::string verify_sparse_csv(std::size_t n, std::size_t k, std::size_t trials,
                              std::uint64_t seed) {
  const SparseGeneratorNet net = build_sparsity_net(n, k);
  std::ostringstream out;
  out << "# cmd=verify-sparse n=" << n << " k=" << k << " trials=" << trials
      << " seed=" << seed << "\n";
  out << "trial,n,k,max_abs_error,output_sparsity\n";

  struct Row {
    double err;
    std::size_t sparsity;
  };
  std::vector<Row> rows(trials);
  Rng master(seed);
  const std::int64_t n_trials = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t ti = 0; ti < n_trials; ++ti) {
    Rng rng = master.fork(static_cast<std::uint64_t>(ti));
    const std::vector<double> z = random_sparse(rng, n, k, -3.0, 3.0);
    const std::vector<double> latent = encode_k_sparse(z, net);
    const std::vector<double> round_trip = net.forward(latent);

    std::vector<double> probe(2 * k);
    for (double& v : probe) v = rng.gaussian();
    rows[static_cast<std::size_t>(ti)] = {
        max_abs_diff(round_trip, z), count_nonzero(net.forward(probe))};
  }
  for (std::size_t ti = 0; ti < trials; ++ti)
    out << ti << "," << n << "," << k << "," << format_double(rows[ti].err) << ","
        << rows[ti].sparsity << "\n";
  return out.str();
}

std::string sense_csv(const SparseGeneratorNet& net, const SenseParams& params) {
  const std::size_t n = net.n, k = net.k;
  if (params.m > n)
    throw std::invalid_argument("sense: m must not exceed the signal dimension");
  if (params.pool < 2 || params.trials < 1)
    throw std::invalid_argument("sense: need pool >= 2 and trials >= 1");

  std::ostringstream out;
  out << "# cmd=sense n=" << n << " k=" << k << " m=" << params.m
      << " b=" << params.bits << " trials=" << params.trials
      << " seed=" << params.seed << " pool=" << params.pool
      << " noise=" << format_double(params.noise) << "\n";
  out << "trial,m,b,method,residual,success,wall_time_ms\n";

  Rng master(params.seed);
  // Shared candidate pool of k-sparse signals.
  Rng pool_rng = master.fork(~std::uint64_t{0});
  std::vector<std::vector<double>> pool(params.pool);
  for (auto& z : pool) z = random_sparse(pool_rng, n, k, std::log10(0.5), std::log10(2.0));

  struct Row {
    double net_residual, latent_residual;
    bool net_ok, latent_ok;
    double net_ms, latent_ms;
  };
  std::vector<Row> rows(params.trials);

  const std::int64_t n_trials = static_cast<std::int64_t>(params.trials);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t ti = 0; ti < n_trials; ++ti) {
    Rng rng = master.fork(static_cast<std::uint64_t>(ti));
    const MeasurementEnsemble ens =
        make_ensemble(params.m, n, params.bits, rng.next_u64());
    const std::size_t truth = static_cast<std::size_t>(rng.below(pool.size()));

    std::vector<double> x = pool[truth];
    const std::vector<double> pert = rng.in_ball(n, params.noise);
    for (std::size_t c = 0; c < n; ++c) x[c] += pert[c];
    std::vector<double> y(params.m, 0.0);
    kernels::matvec(ens.A_rounded, x, y);

    Row row{};
    const auto t0 = std::chrono::steady_clock::now();
    const RecoverResult rec = recover_over_net(ens.A_rounded, y, pool);
    const auto t1 = std::chrono::steady_clock::now();
    row.net_residual = rec.distance;
    row.net_ok = rec.index == truth;
    row.net_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    RecoveryConfig rc = params.recovery;
    rc.seed = rng.next_u64();
    const auto t2 = std::chrono::steady_clock::now();
    const LatentRecoverResult lat = latent_recover(net, ens.A_rounded, y, rc);
    const auto t3 = std::chrono::steady_clock::now();
    row.latent_residual = dist2(lat.reconstruction, pool[truth]);
    // The perturbation itself caps the achievable reconstruction error.
    row.latent_ok = row.latent_residual <= std::max(1e-3, 3.0 * params.noise);
    row.latent_ms = std::chrono::duration<double, std::milli>(t3 - t2).count();

    rows[static_cast<std::size_t>(ti)] = row;
  }

  for (std::size_t ti = 0; ti < params.trials; ++ti) {
    const Row& row = rows[ti];
    const double net_ms = params.timing ? row.net_ms : 0.0;
    const double lat_ms = params.timing ? row.latent_ms : 0.0;
    out << ti << "," << params.m << "," << params.bits << ",net,"
        << format_double(row.net_residual) << "," << (row.net_ok ? 1 : 0) << ","
        << format_double(net_ms) << "\n";
    out << ti << "," << params.m << "," << params.bits << ",latent,"
        << format_double(row.latent_residual) << "," << (row.latent_ok ? 1 : 0)
        << "," << format_double(lat_ms) << "\n";
  }
  return out.str();
}

std::string game_csv(const GameParams& params) {
  const GameSummary summary = run_game_trials(params);
  std::ostringstream out;
  out << "# cmd=game n=" << params.n << " k=" << params.k
      << " L=" << format_double(params.L) << " r=" << format_double(params.r)
      << " delta=" << format_double(params.delta)
      << " C=" << format_double(params.C) << " R=" << format_double(summary.R)
      << " m=" << params.m << " b=" << params.bits << " t=" << params.t
      << " trials=" << params.trials << " seed=" << params.seed << "\n";
  out << "# d=" << summary.d << " set_size=" << summary.set_size
      << " D=" << format_double(summary.D)
      << " success_rate=" << format_double(summary.success_rate)
      << " bits_per_entry_analytic=" << summary.bits_per_entry_analytic
      << " bits_sent_raw=" << summary.bits_sent_raw << "\n";
  out << "trial,j,success,bits_sent,margin,u_norm_ok\n";
  for (const auto& rec : summary.trials)
    out << rec.trial << "," << rec.chunk << "," << (rec.success ? 1 : 0) << ","
        << rec.bits_sent << "," << format_double(rec.margin) << ","
        << (rec.u_norm_ok ? 1 : 0) << "\n";
  return out.str();
}

std::string lipschitz_csv(std::size_t depth, std::size_t width,
                          std::size_t input_dim, std::size_t points,
                          double epsilon, std::size_t trials, std::uint64_t seed) {
  const StretchReport report =
      stretch_experiment(depth, width, input_dim, points, epsilon, trials, seed);
  std::ostringstream out;
  out << "# cmd=lipschitz d=" << depth << " n=" << width << " k=" << input_dim
      << " N=" << points << " eps=" << format_double(epsilon)
      << " trials=" << trials << " seed=" << seed << "\n";
  out << "# violation_fraction=" << format_double(report.violation_fraction)
      << " max_stretch=" << format_double(report.max_stretch_seen) << "\n";
  out << "trial,layer,max_stretch,violated\n";
  for (std::size_t ti = 0; ti < report.trials.size(); ++ti) {
    const auto& tr = report.trials[ti];
    for (std::size_t l = 0; l < tr.per_layer_max.size(); ++l)
      out << ti << "," << (l + 1) << "," << format_double(tr.per_layer_max[l])
          << "," << (tr.per_layer_max[l] > 1.0 + epsilon ? 1 : 0) << "\n";
  }
  return out.str();
}

}  // namespace gencs::experiments
