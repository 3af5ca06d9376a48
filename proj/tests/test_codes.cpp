#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "gencs/codes.hpp"

using namespace gencs;

TEST_CASE("find_prime_in: small cases") {
  CHECK(find_prime_in(1) == 2);
  CHECK(find_prime_in(4) == 5);
  CHECK(find_prime_in(100) == 101);
  CHECK(find_prime_in(8) == 11);
}

TEST_CASE("find_prime_in: result is prime and in (z, 2z] up to 1e6") {
  for (std::uint64_t z : {2ull, 13ull, 97ull, 1024ull, 65536ull, 1000000ull}) {
    const std::uint64_t p = find_prime_in(z);
    CHECK(p > z);
    CHECK(p <= 2 * z);
    CHECK(is_prime(p));
  }
}

TEST_CASE("balanced codebook: n=24, verified hamming window [8, 16]") {
  const BalancedCodebook cb = gen_balanced_codebook(24, 8, 5);
  CHECK(cb.points.size() >= 8);
  const auto [mn, mx] = pairwise_hamming(cb.points);
  CHECK(mn >= 8);
  CHECK(mx <= 16);
  CHECK(cb.min_hamming == mn);
  CHECK(cb.max_hamming == mx);

  // Alphabet is +-1/sqrt(n); zero codeword included, all points unit norm.
  const double scale = 1.0 / std::sqrt(24.0);
  for (const auto& p : cb.points) {
    double nrm = 0.0;
    for (double v : p) {
      CHECK(std::abs(v) == doctest::Approx(scale).epsilon(1e-15));
      nrm += v * v;
    }
    CHECK(nrm == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("balanced codebook: hamming window is the l2 window") {
  // For points on the +-1/sqrt(n) alphabet, d2 = 4 h / n exactly, so the
  // Hamming window [n/3, 2n/3] pins the squared distances to [4/3, 8/3].
  const BalancedCodebook cb = gen_balanced_codebook(24, 8, 6);
  for (std::size_t i = 0; i < cb.points.size(); ++i)
    for (std::size_t j = i + 1; j < cb.points.size(); ++j) {
      std::size_t h = 0;
      double d2 = 0.0;
      for (std::size_t c = 0; c < cb.n; ++c) {
        h += cb.points[i][c] != cb.points[j][c];
        const double d = cb.points[i][c] - cb.points[j][c];
        d2 += d * d;
      }
      CHECK(d2 == doctest::Approx(4.0 * h / cb.n).epsilon(1e-12));
      CHECK(static_cast<double>(h) / cb.n >= 1.0 / 3 - 1e-12);
      CHECK(static_cast<double>(h) / cb.n <= 2.0 / 3 + 1e-12);
    }
}

TEST_CASE("balanced codebook: determinism and failure mode") {
  const BalancedCodebook a = gen_balanced_codebook(18, 4, 9);
  const BalancedCodebook b = gen_balanced_codebook(18, 4, 9);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i)
    CHECK(a.points[i] == b.points[i]);

  // Requesting far more codewords than a balanced code of this length can
  // hold exhausts the attempt budget.
  CHECK_THROWS_AS(gen_balanced_codebook(12, 2048, 1, 50), construction_error);
  try {
    gen_balanced_codebook(12, 2048, 1, 50);
  } catch (const construction_error& e) {
    CHECK(e.best_achieved() > 0.0);
  }
}

TEST_CASE("pairwise_hamming: tiny hand cases and input validation") {
  using P = std::vector<std::vector<double>>;
  CHECK(pairwise_hamming(P{{1, 1}, {-1, -1}}) == std::pair<std::size_t, std::size_t>{2, 2});
  CHECK(pairwise_hamming(P{{1, 1}, {1, -1}, {-1, -1}}) ==
        std::pair<std::size_t, std::size_t>{1, 2});
  CHECK_THROWS_AS(pairwise_hamming(P{{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(pairwise_hamming(P{{1, 1}, {1}}), std::invalid_argument);
}

TEST_CASE("rs_subset: constant polynomials for k=2") {
  const RsSubset rs = rs_subset(5, 2, 5, 3);
  CHECK(rs.tuples.size() == 5);
  std::set<std::uint32_t> constants;
  for (const auto& t : rs.tuples) {
    REQUIRE(t.size() == 2);
    CHECK(t[0] == t[1]);  // degree-0 polynomials
    constants.insert(t[0]);
  }
  CHECK(constants.size() == 5);
}

TEST_CASE("rs_subset: k=4 q=5 full space has pairwise disagreement >= k/2") {
  const RsSubset rs = rs_subset(5, 4, 25, 4);
  REQUIRE(rs.tuples.size() == 25);
  for (std::size_t i = 0; i < rs.tuples.size(); ++i)
    for (std::size_t j = i + 1; j < rs.tuples.size(); ++j) {
      std::size_t disagree = 0;
      for (std::size_t c = 0; c < 4; ++c)
        disagree += rs.tuples[i][c] != rs.tuples[j][c];
      CHECK(disagree >= 2);
    }
}

TEST_CASE("rs_subset: sampled subsets keep the distance (q=7, k=4)") {
  const RsSubset rs = rs_subset(7, 4, 20, 8);
  REQUIRE(rs.tuples.size() == 20);
  for (std::size_t i = 0; i < rs.tuples.size(); ++i)
    for (std::size_t j = i + 1; j < rs.tuples.size(); ++j) {
      std::size_t disagree = 0;
      for (std::size_t c = 0; c < 4; ++c)
        disagree += rs.tuples[i][c] != rs.tuples[j][c];
      CHECK(disagree >= 2);
    }
}

TEST_CASE("rs_subset: odd k rounds the message length up") {
  const RsSubset rs = rs_subset(5, 3, 25, 9);  // message length ceil(3/2) = 2
  CHECK(rs.tuples.size() == 25);
  for (std::size_t i = 0; i < rs.tuples.size(); ++i)
    for (std::size_t j = i + 1; j < rs.tuples.size(); ++j) {
      std::size_t disagree = 0;
      for (std::size_t c = 0; c < 3; ++c)
        disagree += rs.tuples[i][c] != rs.tuples[j][c];
      CHECK(disagree >= 2);  // floor(k/2) + 1
    }
}

TEST_CASE("rs_subset: preconditions") {
  CHECK_THROWS_AS(rs_subset(4, 2, 4, 1), std::invalid_argument);   // q not prime
  CHECK_THROWS_AS(rs_subset(3, 4, 3, 1), std::invalid_argument);   // q < k
  CHECK_THROWS_AS(rs_subset(5, 4, 26, 1), std::invalid_argument);  // count too big
}
