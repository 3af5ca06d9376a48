#include "gencs/codes.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "gencs/kernels.hpp"
#include "gencs/rng.hpp"

namespace gencs {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

std::uint64_t find_prime_in(std::uint64_t z) {
  if (z < 1) throw std::invalid_argument("find_prime_in: z must be >= 1");
  for (std::uint64_t p = z + 1; p <= 2 * z; ++p)
    if (is_prime(p)) return p;
  throw std::logic_error("find_prime_in: no prime found (unreachable)");
}

namespace {

std::size_t weight(const std::vector<std::uint8_t>& bits) {
  std::size_t w = 0;
  for (auto b : bits) w += b;
  return w;
}

}  // namespace

BalancedCodebook gen_balanced_codebook(std::size_t n, std::size_t min_size,
                                       std::uint64_t seed, int max_attempts,
                                       double tau) {
  if (n < 6) throw std::invalid_argument("gen_balanced_codebook: n must be >= 6");
  if (min_size < 2)
    throw std::invalid_argument("gen_balanced_codebook: min_size must be >= 2");

  std::size_t msg_bits = 0;
  while ((1ull << msg_bits) < min_size) ++msg_bits;
  if (msg_bits > n)
    throw construction_error(
        "gen_balanced_codebook: requested size exceeds 2^n", 0.0);

  // Weight window for nonzero codewords; with tau = 1/6 this is [n/3, 2n/3].
  const auto lo = static_cast<std::size_t>(std::ceil((0.5 - tau) * n - 1e-9));
  const auto hi = static_cast<std::size_t>(std::floor((0.5 + tau) * n + 1e-9));

  Rng rng(seed);
  const std::size_t count = 1ull << msg_bits;
  double best_deviation = static_cast<double>(n);

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    // Random generator matrix over F_2, one row per message bit.
    std::vector<std::vector<std::uint8_t>> gen(msg_bits,
                                               std::vector<std::uint8_t>(n));
    for (auto& row : gen)
      for (auto& b : row) b = static_cast<std::uint8_t>(rng.next_u64() & 1);

    // All codewords; nonzero ones must land in the weight window.
    std::vector<std::vector<std::uint8_t>> words(count,
                                                 std::vector<std::uint8_t>(n, 0));
    bool ok = true;
    double worst = 0.0;
    for (std::size_t msg = 1; msg < count; ++msg) {
      auto& w = words[msg];
      const std::size_t prev = msg & (msg - 1);  // msg with lowest bit cleared
      const std::size_t bit = msg ^ prev;
      std::size_t bit_index = 0;
      while ((1ull << bit_index) != bit) ++bit_index;
      for (std::size_t j = 0; j < n; ++j)
        w[j] = static_cast<std::uint8_t>(words[prev][j] ^ gen[bit_index][j]);
      const std::size_t wt = weight(w);
      const double dev = std::abs(static_cast<double>(wt) - 0.5 * n);
      worst = std::max(worst, dev);
      if (wt < lo || wt > hi) ok = false;
    }
    if (!ok) {
      best_deviation = std::min(best_deviation, worst);
      continue;
    }

    BalancedCodebook cb;
    cb.n = n;
    cb.tau = tau;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    cb.points.reserve(count);
    for (const auto& w : words) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j) p[j] = w[j] ? -scale : scale;
      cb.points.push_back(std::move(p));
    }
    const auto [mn, mx] = pairwise_hamming(cb.points);
    cb.min_hamming = mn;
    cb.max_hamming = mx;
    return cb;
  }
  throw construction_error(
      "gen_balanced_codebook: no balanced code of size " + std::to_string(count) +
          " found within " + std::to_string(max_attempts) +
          " attempts (best weight deviation from n/2: " +
          std::to_string(best_deviation) + ")",
      best_deviation);
}

std::pair<std::size_t, std::size_t> pairwise_hamming(
    const std::vector<std::vector<double>>& points) {
  if (points.size() < 2)
    throw std::invalid_argument("pairwise_hamming: need at least 2 points");
  for (const auto& p : points)
    if (p.size() != points[0].size())
      throw std::invalid_argument("pairwise_hamming: points differ in length");
  return kernels::pairwise_hamming_extremes(points);
}

RsSubset rs_subset(std::uint32_t q, std::size_t k, std::uint64_t count,
                   std::uint64_t seed) {
  if (!is_prime(q)) throw std::invalid_argument("rs_subset: q must be prime");
  if (q < k)
    throw std::invalid_argument("rs_subset: need q >= k evaluation points");
  const std::size_t msg_len = (k + 1) / 2;

  // Message space size, saturated at 2^63 to keep the count check simple.
  std::uint64_t space = 1;
  bool saturated = false;
  for (std::size_t i = 0; i < msg_len; ++i) {
    if (space > (1ull << 62) / q) {
      saturated = true;
      break;
    }
    space *= q;
  }
  if (!saturated && count > space)
    throw std::invalid_argument("rs_subset: count exceeds q^ceil(k/2) codewords");

  const auto eval_poly = [&](const std::vector<std::uint32_t>& coeffs) {
    std::vector<std::uint32_t> word(k);
    for (std::size_t x = 0; x < k; ++x) {
      std::uint64_t acc = 0;
      for (std::size_t c = msg_len; c-- > 0;) acc = (acc * x + coeffs[c]) % q;
      word[x] = static_cast<std::uint32_t>(acc);
    }
    return word;
  };

  const auto message_coeffs = [&](std::uint64_t msg) {
    std::vector<std::uint32_t> coeffs(msg_len);
    for (std::size_t c = 0; c < msg_len; ++c) {
      coeffs[c] = static_cast<std::uint32_t>(msg % q);
      msg /= q;
    }
    return coeffs;
  };

  RsSubset rs;
  rs.q = q;
  rs.k = k;
  rs.alphabet.resize(q);
  for (std::uint32_t s = 0; s < q; ++s) rs.alphabet[s] = s;
  rs.tuples.reserve(count);

  if (!saturated && count == space) {
    for (std::uint64_t msg = 0; msg < space; ++msg)
      rs.tuples.push_back(eval_poly(message_coeffs(msg)));
  } else {
    Rng rng(seed);
    std::set<std::vector<std::uint32_t>> chosen;
    while (chosen.size() < count) {
      std::vector<std::uint32_t> coeffs(msg_len);
      for (auto& c : coeffs) c = static_cast<std::uint32_t>(rng.below(q));
      if (chosen.insert(coeffs).second) rs.tuples.push_back(eval_poly(coeffs));
    }
  }
  return rs;
}

}  // namespace gencs
