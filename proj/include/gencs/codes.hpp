#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gencs {

// Raised when a randomized construction exhausts its retry budget; carries
// the closest the verifier got to the target bounds.
class construction_error : public std::runtime_error {
 public:
  construction_error(const std::string& what, double best_achieved)
      : std::runtime_error(what), best_achieved_(best_achieved) {}
  double best_achieved() const { return best_achieved_; }

 private:
  double best_achieved_ = 0.0;
};

// Smallest prime p with z < p <= 2z (one always exists).
std::uint64_t find_prime_in(std::uint64_t z);
bool is_prime(std::uint64_t p);

// Binary code mapped onto {+-1/sqrt(n)}^n with every pairwise Hamming
// distance inside [(1/2 - tau) n, (1/2 + tau) n].
struct BalancedCodebook {
  std::size_t n = 0;
  double tau = 1.0 / 6.0;
  std::vector<std::vector<double>> points;
  std::size_t min_hamming = 0;
  std::size_t max_hamming = 0;
};

// Random binary linear code with explicit verification of the weight bounds,
// retried up to max_attempts; the returned codebook has >= min_size points.
BalancedCodebook gen_balanced_codebook(std::size_t n, std::size_t min_size,
                                       std::uint64_t seed, int max_attempts = 20000,
                                       double tau = 1.0 / 6.0);

// Exact min/max Hamming distance over all pairs, by brute force.
std::pair<std::size_t, std::size_t> pairwise_hamming(
    const std::vector<std::vector<double>>& points);

// Reed-Solomon codewords: polynomials of degree < ceil(k/2) over F_q
// evaluated at the points 0, 1, ..., k-1. Any two distinct tuples agree in
// fewer than ceil(k/2) coordinates, i.e. disagree in >= floor(k/2)+1.
struct RsSubset {
  std::uint32_t q = 0;  // prime alphabet size
  std::size_t k = 0;    // block length
  std::vector<std::uint32_t> alphabet;        // 0 .. q-1
  std::vector<std::vector<std::uint32_t>> tuples;
};

RsSubset rs_subset(std::uint32_t q, std::size_t k, std::uint64_t count,
                   std::uint64_t seed);

}  // namespace gencs
