// Command-line front end: reproducible, seeded experiments over the library,
// emitting CSV or JSON. Exit codes: 0 success, 1 experiment failure, 2 usage.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gencs/experiments.hpp"
#include "gencs/io.hpp"
#include "gencs/separated_set.hpp"

namespace {

void emit(const std::string& out_path, const std::string& contents) {
  if (out_path == "-") {
    std::fwrite(contents.data(), 1, contents.size(), stdout);
    return;
  }
  gencs::write_text_file(out_path, contents);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constructions and experiments for generative sparse recovery"};
  app.require_subcommand(1);

  std::size_t n = 64, k = 4, m = 48, trials = 100, N = 10, d = 4, t = 3;
  std::size_t size = 16, pool = 256;
  int bits = 16;
  double L = 64.0, r = 1.0, delta = 8.0, C = 1.0, R = 0.0, eps = 0.5;
  double noise = 0.01, noise_sigma = 0.0;
  std::uint64_t seed = 1;
  std::string out_path = "-";
  std::string net_path;
  bool timing = false;

  auto* gen_net = app.add_subcommand("gen-net", "emit a sparsity generator as JSON");
  gen_net->add_option("--n", n, "ambient dimension")->required();
  gen_net->add_option("--k", k, "sparsity / copies")->required();
  gen_net->add_option("--out", out_path, "output path or -");

  auto* verify = app.add_subcommand("verify-sparse",
                                    "round-trip and sparsity check of the generator");
  verify->add_option("--n", n)->required();
  verify->add_option("--k", k)->required();
  verify->add_option("--trials", trials);
  verify->add_option("--seed", seed);
  verify->add_option("--out", out_path);

  auto* build_code = app.add_subcommand("build-code", "balanced codebook as JSON");
  build_code->add_option("--n", n, "block length")->required();
  build_code->add_option("--size", size, "minimum number of codewords")->required();
  build_code->add_option("--seed", seed);
  build_code->add_option("--out", out_path);

  auto* build_set = app.add_subcommand("build-set", "well-separated set as JSON");
  build_set->add_option("--L", L)->required();
  build_set->add_option("--r", r)->required();
  build_set->add_option("--k", k)->required();
  build_set->add_option("--n", n)->required();
  build_set->add_option("--R", R)->required();
  build_set->add_option("--seed", seed);
  build_set->add_option("--out", out_path);

  auto* sense = app.add_subcommand("sense", "recovery experiments over a generator");
  sense->add_option("--net", net_path, "generator JSON (default: fresh --n/--k net)");
  sense->add_option("--n", n);
  sense->add_option("--k", k);
  sense->add_option("--m", m, "measurement rows")->required();
  sense->add_option("--b", bits, "bits per matrix entry");
  sense->add_option("--trials", trials);
  sense->add_option("--seed", seed);
  sense->add_option("--pool", pool, "candidate pool size");
  sense->add_option("--noise", noise, "perturbation radius");
  sense->add_flag("--timing", timing, "record real wall times (not byte-stable)");
  sense->add_option("--out", out_path);

  auto* game = app.add_subcommand("game", "one-way indexing game simulation");
  game->add_option("--n", n)->required();
  game->add_option("--k", k)->required();
  game->add_option("--L", L);
  game->add_option("--r", r);
  game->add_option("--delta", delta);
  game->add_option("--C", C);
  game->add_option("--R", R, "set radius (default sqrt(L r delta))");
  game->add_option("--m", m)->required();
  game->add_option("--b", bits);
  game->add_option("--t", t, "number of layers/chunks");
  game->add_option("--trials", trials);
  game->add_option("--seed", seed);
  game->add_option("--noise-sigma", noise_sigma,
                   "optional Gaussian perturbation of the encoded sum");
  game->add_option("--out", out_path);

  auto* lipschitz = app.add_subcommand("lipschitz", "random-net stretch experiment");
  lipschitz->add_option("--d", d, "depth")->required();
  lipschitz->add_option("--n", n, "width")->required();
  lipschitz->add_option("--k", k, "input dimension")->required();
  lipschitz->add_option("--N", N, "points per trial");
  lipschitz->add_option("--eps", eps);
  lipschitz->add_option("--trials", trials);
  lipschitz->add_option("--seed", seed);
  lipschitz->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (gen_net->parsed()) {
      const gencs::SparseGeneratorNet net = gencs::build_sparsity_net(n, k);
      emit(out_path, gencs::net_to_json(net.net).dump(2) + "\n");
    } else if (verify->parsed()) {
      emit(out_path, gencs::experiments::verify_sparse_csv(n, k, trials, seed));
    } else if (build_code->parsed()) {
      const gencs::BalancedCodebook cb = gencs::gen_balanced_codebook(n, size, seed);
      emit(out_path, gencs::codebook_to_json(cb).dump(2) + "\n");
    } else if (build_set->parsed()) {
      const gencs::WellSeparatedSet set =
          gencs::build_separated_set(L, r, k, n, R, seed);
      emit(out_path, gencs::set_to_json(set).dump(2) + "\n");
    } else if (sense->parsed()) {
      gencs::SparseGeneratorNet net;
      if (!net_path.empty()) {
        const auto j = nlohmann::json::parse(gencs::read_text_file(net_path));
        gencs::ReluNetwork loaded = gencs::net_from_json(j);
        const std::size_t nn = loaded.output_dim();
        const std::size_t kk = loaded.input_dim() / 2;
        net = gencs::SparseGeneratorNet{std::move(loaded), nn, kk};
      } else {
        net = gencs::build_sparsity_net(n, k);
      }
      gencs::experiments::SenseParams params;
      params.m = m;
      params.bits = bits;
      params.trials = trials;
      params.seed = seed;
      params.pool = pool;
      params.noise = noise;
      params.timing = timing;
      emit(out_path, gencs::experiments::sense_csv(net, params));
    } else if (game->parsed()) {
      gencs::GameParams params;
      params.n = n;
      params.k = k;
      params.L = L;
      params.r = r;
      params.delta = delta;
      params.C = C;
      params.R = R;
      params.m = m;
      params.bits = bits;
      params.t = t;
      params.trials = trials;
      params.seed = seed;
      params.noise_sigma = noise_sigma;
      emit(out_path, gencs::experiments::game_csv(params));
    } else if (lipschitz->parsed()) {
      emit(out_path,
           gencs::experiments::lipschitz_csv(d, n, k, N, eps, trials, seed));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;  // parameter combination rejected by a module precondition
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
