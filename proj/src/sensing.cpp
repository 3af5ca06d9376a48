#include "gencs/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gencs/kernels.hpp"
#include "gencs/rng.hpp"

namespace gencs {

Matrix gaussian_matrix(std::size_t m, std::size_t n, double variance,
                       std::uint64_t seed) {
  Rng rng(seed);
  Matrix a(m, n);
  const double stddev = std::sqrt(variance);
  for (double& v : a.a) v = stddev * rng.gaussian();
  return a;
}

namespace {

double orthonormality_defect(const Matrix& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = i; j < a.rows; ++j) {
      const double g = dot(a.row(i), a.row(j)) - (i == j ? 1.0 : 0.0);
      worst = std::max(worst, std::abs(g));
    }
  return worst;
}

}  // namespace

Matrix sample_orthonormal(std::size_t m, std::size_t n, std::uint64_t seed) {
  if (m < 1 || m > n)
    throw std::invalid_argument("sample_orthonormal: need 1 <= m <= n");
  Rng rng(seed);
  for (int attempt = 0; attempt < 16; ++attempt) {
    Matrix a = gaussian_matrix(m, n, 1.0, rng.next_u64());
    // Modified Gram-Schmidt, two passes per row.
    bool degenerate = false;
    for (std::size_t i = 0; i < m && !degenerate; ++i) {
      double* vi = a.a.data() + i * n;
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t j = 0; j < i; ++j) {
          const double* qj = a.a.data() + j * n;
          double proj = 0.0;
          for (std::size_t c = 0; c < n; ++c) proj += vi[c] * qj[c];
          for (std::size_t c = 0; c < n; ++c) vi[c] -= proj * qj[c];
        }
      double nrm = 0.0;
      for (std::size_t c = 0; c < n; ++c) nrm += vi[c] * vi[c];
      nrm = std::sqrt(nrm);
      if (nrm < 1e-8) {
        degenerate = true;
        break;
      }
      for (std::size_t c = 0; c < n; ++c) vi[c] /= nrm;
    }
    if (degenerate) continue;
    if (orthonormality_defect(a) <= 1e-10) return a;
  }
  throw std::runtime_error("sample_orthonormal: failed to orthonormalize");
}

Matrix discretize(const Matrix& a, int bits) {
  if (bits < 1) throw std::invalid_argument("discretize: bits must be >= 1");
  Matrix out(a.rows, a.cols);
  const double up = std::ldexp(1.0, bits), down = std::ldexp(1.0, -bits);
  for (std::size_t i = 0; i < a.a.size(); ++i)
    out.a[i] = std::nearbyint(a.a[i] * up) * down;
  return out;
}

MeasurementEnsemble make_ensemble(std::size_t m, std::size_t n, int bits,
                                  std::uint64_t seed) {
  MeasurementEnsemble e;
  e.A = sample_orthonormal(m, n, seed);
  e.A_rounded = discretize(e.A, bits);
  e.bits = bits;
  e.m = m;
  e.n = n;
  return e;
}

WitnessResult discretization_witness(const Matrix& A, const Matrix& A_rounded,
                                     int bits, std::span<const double> v) {
  if (A.rows != A_rounded.rows || A.cols != A_rounded.cols || v.size() != A.cols)
    throw std::invalid_argument("discretization_witness: shape mismatch");
  if (orthonormality_defect(A) > 1e-8)
    throw std::invalid_argument("discretization_witness: rows are not orthonormal");

  const std::size_t m = A.rows, n = A.cols;
  // s = A^T (A - A_rounded) v
  std::vector<double> dv(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    const double* ai = A.a.data() + i * n;
    const double* ri = A_rounded.a.data() + i * n;
    for (std::size_t c = 0; c < n; ++c) acc += (ai[c] - ri[c]) * v[c];
    dv[i] = acc;
  }
  WitnessResult res;
  res.s.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = A.a.data() + i * n;
    for (std::size_t c = 0; c < n; ++c) res.s[c] += ai[c] * dv[i];
  }

  std::vector<double> lhs(m, 0.0), rhs(m, 0.0), vs(v.begin(), v.end());
  for (std::size_t c = 0; c < n; ++c) vs[c] -= res.s[c];
  kernels::matvec(A_rounded, v, lhs);
  kernels::matvec(A, vs, rhs);
  res.identity_residual = dist2(lhs, rhs);
  res.s_norm = norm2(res.s);
  res.s_norm_bound = static_cast<double>(n) * std::ldexp(1.0, -bits) * norm2(v);
  return res;
}

Matrix measure_candidates(const Matrix& A,
                          const std::vector<std::vector<double>>& Z) {
  Matrix images(Z.size(), A.rows);
  std::vector<double> buf(A.rows);
  for (std::size_t i = 0; i < Z.size(); ++i) {
    if (Z[i].size() != A.cols)
      throw std::invalid_argument("measure_candidates: candidate dimension mismatch");
    kernels::matvec(A, Z[i], buf);
    std::copy(buf.begin(), buf.end(), images.a.begin() + i * A.rows);
  }
  return images;
}

RecoverResult recover_measured(const Matrix& AZ, std::span<const double> y) {
  if (AZ.rows == 0) throw std::invalid_argument("recover: empty candidate set");
  const auto [idx, dist] = kernels::argmin_distance(AZ, y);
  return {idx, dist};
}

RecoverResult recover_over_net(const Matrix& A, std::span<const double> y,
                               const std::vector<std::vector<double>>& Z) {
  if (Z.empty()) throw std::invalid_argument("recover_over_net: empty candidate set");
  return recover_measured(measure_candidates(A, Z), y);
}

SrecReport srec_check(
    const Matrix& A, const std::vector<std::vector<double>>& net_latents,
    const std::function<std::vector<double>(std::span<const double>)>& G,
    double delta, std::size_t trials, std::uint64_t seed, double c) {
  if (net_latents.empty())
    throw std::invalid_argument("srec_check: empty latent net");
  std::vector<std::vector<double>> images;
  images.reserve(net_latents.size());
  for (const auto& m : net_latents) images.push_back(G(m));
  const std::size_t n = images.front().size();

  Rng rng(seed);
  std::size_t passed = 0;
  double max_ratio = 0.0;
  std::vector<double> ax(A.rows);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng trial = rng.fork(t);
    const std::size_t pick = trial.below(net_latents.size());
    std::vector<double> x = images[pick];
    const std::vector<double> noise =
        trial.in_ball(n, delta * trial.uniform01());
    for (std::size_t i = 0; i < n; ++i) x[i] += noise[i];

    std::size_t best = 0;
    double best_d = dist2(x, images[0]);
    for (std::size_t i = 1; i < images.size(); ++i) {
      const double d = dist2(x, images[i]);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = x[i] - images[best][i];
    kernels::matvec(A, diff, ax);
    const double measured = norm2(ax);
    if (measured <= c * delta) ++passed;
    max_ratio = std::max(max_ratio, measured / delta);
  }
  return {static_cast<double>(passed) / static_cast<double>(trials), max_ratio};
}

namespace {

struct ForwardTrace {
  std::vector<std::vector<double>> preacts;
  std::vector<double> output;
};

ForwardTrace forward_with_trace(const ReluNetwork& net, std::span<const double> x) {
  ForwardTrace tr;
  std::vector<double> cur(x.begin(), x.end());
  for (const auto& layer : net.layers()) {
    std::vector<double> pre(layer.weights.rows(), 0.0);
    layer.weights.matvec(cur, pre);
    tr.preacts.push_back(pre);
    for (double& v : pre) v = apply_activation(layer.activation, v);
    cur = std::move(pre);
  }
  tr.output = cur;
  return tr;
}

double activation_mask(ActivationKind kind, double pre) {
  if (kind == ActivationKind::none) return 1.0;
  // Active-set linearization; derivative 0 exactly at the kinks.
  return kind == ActivationKind::positive ? (pre > 0.0 ? 1.0 : 0.0)
                                          : (pre < 0.0 ? 1.0 : 0.0);
}

// Subgradient of ||A G(x) - y||^2 at the trace's activation pattern.
std::vector<double> objective_gradient(const SparseGeneratorNet& net,
                                       const Matrix& A, std::span<const double> y,
                                       const ForwardTrace& tr) {
  const std::size_t m = A.rows, n = A.cols;
  std::vector<double> r(m, 0.0);
  kernels::matvec(A, tr.output, r);
  for (std::size_t i = 0; i < m; ++i) r[i] -= y[i];

  std::vector<double> g(n, 0.0);  // 2 A^T r
  for (std::size_t i = 0; i < m; ++i) {
    const double ri = 2.0 * r[i];
    if (ri == 0.0) continue;
    const double* ai = A.a.data() + i * n;
    for (std::size_t c = 0; c < n; ++c) g[c] += ai[c] * ri;
  }

  const auto& layers = net.net.layers();
  for (std::size_t t = layers.size(); t-- > 0;) {
    const auto& layer = layers[t];
    const auto& pre = tr.preacts[t];
    for (std::size_t i = 0; i < g.size(); ++i)
      g[i] *= activation_mask(layer.activation, pre[i]);
    std::vector<double> down(layer.weights.cols(), 0.0);
    layer.weights.add_transposed_matvec(g, down);
    g = std::move(down);
  }
  return g;
}

// J v for the linearization frozen at the trace's activation pattern.
std::vector<double> jacobian_apply(const SparseGeneratorNet& net,
                                   const ForwardTrace& tr,
                                   std::span<const double> v) {
  std::vector<double> cur(v.begin(), v.end());
  const auto& layers = net.net.layers();
  for (std::size_t t = 0; t < layers.size(); ++t) {
    std::vector<double> next(layers[t].weights.rows(), 0.0);
    layers[t].weights.matvec(cur, next);
    const auto& pre = tr.preacts[t];
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] *= activation_mask(layers[t].activation, pre[i]);
    cur = std::move(next);
  }
  return cur;
}

// Solve (H + mu I) d = rhs by Cholesky; dim is 2k, so this is tiny.
bool solve_damped(std::vector<double> H, std::vector<double> rhs, double mu,
                  std::size_t dim, std::vector<double>& d) {
  for (std::size_t i = 0; i < dim; ++i) H[i * dim + i] += mu;
  // Cholesky H = L L^T.
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double acc = H[i * dim + j];
      for (std::size_t c = 0; c < j; ++c) acc -= H[i * dim + c] * H[j * dim + c];
      if (i == j) {
        if (acc <= 0.0) return false;
        H[i * dim + i] = std::sqrt(acc);
      } else {
        H[i * dim + j] = acc / H[j * dim + j];
      }
    }
  }
  // Forward then backward substitution.
  for (std::size_t i = 0; i < dim; ++i) {
    double acc = rhs[i];
    for (std::size_t c = 0; c < i; ++c) acc -= H[i * dim + c] * rhs[c];
    rhs[i] = acc / H[i * dim + i];
  }
  d.assign(dim, 0.0);
  for (std::size_t i = dim; i-- > 0;) {
    double acc = rhs[i];
    for (std::size_t c = i + 1; c < dim; ++c) acc -= H[c * dim + i] * d[c];
    d[i] = acc / H[i * dim + i];
  }
  return true;
}

double objective(const SparseGeneratorNet& net, const Matrix& A,
                 std::span<const double> y, std::span<const double> x,
                 std::vector<double>* reconstruction = nullptr) {
  std::vector<double> gx = net.forward(x);
  std::vector<double> ax(A.rows, 0.0);
  kernels::matvec(A, gx, ax);
  double f = 0.0;
  for (std::size_t i = 0; i < A.rows; ++i) {
    const double d = ax[i] - y[i];
    f += d * d;
  }
  if (reconstruction) *reconstruction = std::move(gx);
  return f;
}

// Deterministic warm start: greedy support selection on the measurement
// residual with a least-squares refit of the values (one matching-pursuit
// sweep), encoded into the latent space. With exact measurements and the
// right support this already sits at the global minimum.
std::vector<double> backprojection_guess(const SparseGeneratorNet& net,
                                         const Matrix& A,
                                         std::span<const double> y) {
  const std::size_t n = A.cols, m = A.rows;
  std::vector<std::size_t> support;
  std::vector<double> fitted;  // values on the support
  std::vector<double> residual(y.begin(), y.end());

  for (std::size_t round = 0; round < net.k; ++round) {
    // Most correlated unused column.
    std::size_t best = n;
    double best_corr = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      bool used = false;
      for (std::size_t s : support) used = used || s == c;
      if (used) continue;
      double corr = 0.0;
      for (std::size_t i = 0; i < m; ++i) corr += A(i, c) * residual[i];
      if (std::abs(corr) > std::abs(best_corr) || best == n) {
        best_corr = corr;
        best = c;
      }
    }
    if (best == n || best_corr == 0.0) break;
    support.push_back(best);

    // Least squares on the current support (normal equations, size <= k).
    const std::size_t s = support.size();
    std::vector<double> H(s * s, 0.0), rhs(s, 0.0);
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t i = 0; i < m; ++i) rhs[a] += A(i, support[a]) * y[i];
      for (std::size_t b = 0; b <= a; ++b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i)
          acc += A(i, support[a]) * A(i, support[b]);
        H[a * s + b] = acc;
        H[b * s + a] = acc;
      }
    }
    if (!solve_damped(H, rhs, 1e-12, s, fitted)) {
      support.pop_back();
      break;
    }

    for (std::size_t i = 0; i < m; ++i) {
      double acc = y[i];
      for (std::size_t a = 0; a < s; ++a) acc -= A(i, support[a]) * fitted[a];
      residual[i] = acc;
    }
  }

  std::vector<double> sparse(n, 0.0);
  for (std::size_t a = 0; a < support.size(); ++a) sparse[support[a]] = fitted[a];
  return encode_k_sparse(sparse, net);
}

}  // namespace

LatentRecoverResult latent_recover(const SparseGeneratorNet& net, const Matrix& A,
                                   std::span<const double> y,
                                   const RecoveryConfig& config,
                                   const std::vector<std::vector<double>>& initial_guesses) {
  if (A.cols != net.n)
    throw std::invalid_argument("latent_recover: matrix columns must equal n");
  if (y.size() != A.rows)
    throw std::invalid_argument("latent_recover: measurement length must equal m");
  if (config.restarts < 1 || config.max_steps < 1 || config.step_size <= 0.0 ||
      config.tolerance <= 0.0)
    throw std::invalid_argument("latent_recover: config fields must be positive");

  const std::size_t dim = 2 * net.k;
  Rng rng(config.seed);

  std::vector<double> bp_guess = backprojection_guess(net, A, y);
  const double restart_radius = 2.0 * norm2(bp_guess) + 1.0;

  LatentRecoverResult best;
  best.objective = std::numeric_limits<double>::infinity();

  for (std::size_t restart = 0; restart < config.restarts; ++restart) {
    std::vector<double> x;
    if (restart < initial_guesses.size()) {
      x = initial_guesses[restart];
      if (x.size() != dim)
        throw std::invalid_argument("latent_recover: initial guess has wrong dim");
    } else if (restart == initial_guesses.size()) {
      x = bp_guess;
    } else {
      x = rng.fork(restart).in_ball(dim, restart_radius);
    }

    double fx = objective(net, A, y, x);
    double step = config.step_size;
    double mu = 1e-8;
    for (std::size_t it = 0; it < config.max_steps && fx > config.tolerance; ++it) {
      const ForwardTrace tr = forward_with_trace(net.net, x);
      const std::vector<double> g = objective_gradient(net, A, y, tr);
      if (dot(g, g) == 0.0) break;  // flat region, nothing to follow

      // Gauss-Newton step on the frozen activation pattern. The generator is
      // piecewise linear, so inside the right wedge this lands on the exact
      // least-squares minimizer; damping plus the descent check below keep
      // the iteration monotone when the pattern is wrong.
      bool moved = false;
      {
        Matrix AJ(A.rows, dim);
        std::vector<double> basis(dim, 0.0), col;
        for (std::size_t c = 0; c < dim; ++c) {
          basis[c] = 1.0;
          col = jacobian_apply(net, tr, basis);
          basis[c] = 0.0;
          for (std::size_t i = 0; i < A.rows; ++i) {
            double acc = 0.0;
            const double* ai = A.a.data() + i * A.cols;
            for (std::size_t cc = 0; cc < A.cols; ++cc) acc += ai[cc] * col[cc];
            AJ(i, c) = acc;
          }
        }
        std::vector<double> resid(A.rows, 0.0);
        kernels::matvec(A, tr.output, resid);
        for (std::size_t i = 0; i < A.rows; ++i) resid[i] = y[i] - resid[i];

        std::vector<double> H(dim * dim, 0.0), rhs(dim, 0.0);
        for (std::size_t i = 0; i < A.rows; ++i)
          for (std::size_t a = 0; a < dim; ++a) {
            rhs[a] += AJ(i, a) * resid[i];
            for (std::size_t b = 0; b <= a; ++b) H[a * dim + b] += AJ(i, a) * AJ(i, b);
          }
        for (std::size_t a = 0; a < dim; ++a)
          for (std::size_t b = a + 1; b < dim; ++b) H[a * dim + b] = H[b * dim + a];

        std::vector<double> d;
        for (int damp = 0; damp < 12 && !moved; ++damp) {
          if (!solve_damped(H, rhs, mu, dim, d)) {
            mu = std::max(mu * 10.0, 1e-12);
            continue;
          }
          std::vector<double> xt(dim);
          for (std::size_t c = 0; c < dim; ++c) xt[c] = x[c] + d[c];
          const double ft = objective(net, A, y, xt);
          if (ft < fx) {
            x = std::move(xt);
            fx = ft;
            mu = std::max(mu / 3.0, 1e-12);
            moved = true;
          } else {
            mu *= 10.0;
          }
        }
      }

      // Fallback: plain subgradient step with halving on non-decrease.
      if (!moved) {
        while (step > 1e-18) {
          std::vector<double> xt(dim);
          for (std::size_t c = 0; c < dim; ++c) xt[c] = x[c] - step * g[c];
          const double ft = objective(net, A, y, xt);
          if (ft < fx) {
            x = std::move(xt);
            fx = ft;
            moved = true;
            break;
          }
          step *= 0.5;
        }
      }
      if (!moved) break;
    }

    if (fx < best.objective) {
      best.objective = fx;
      best.latent = x;
      best.restarts_used = restart + 1;
    }
    if (best.objective <= config.tolerance) break;
  }

  best.converged = best.objective <= config.tolerance;
  best.objective = objective(net, A, y, best.latent, &best.reconstruction);
  return best;
}

}  // namespace gencs
