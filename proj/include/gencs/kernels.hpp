#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gencs/matrix.hpp"

namespace gencs::kernels {

// Each kernel has a serial reference implementation and an OpenMP variant.
// The OpenMP variants only parallelize over independent outputs (rows,
// candidates, pairs), so both variants produce bit-identical results; the
// tests assert exact equality and the bench target compares their speed.

namespace serial {
void matvec(const Matrix& m, std::span<const double> x, std::span<double> out);
void matvec(const SparseMatrix& m, std::span<const double> x, std::span<double> out);
// argmin over rows of ||row - y||^2, ties broken by lowest index.
std::pair<std::size_t, double> argmin_distance(const Matrix& rows,
                                               std::span<const double> y);
// min/max Hamming distance over all pairs of rows (exact coordinate compare).
std::pair<std::size_t, std::size_t> pairwise_hamming_extremes(
    const std::vector<std::vector<double>>& points);
double pairwise_min_distance(const std::vector<std::vector<double>>& points);
}  // namespace serial

namespace par {
void matvec(const Matrix& m, std::span<const double> x, std::span<double> out);
void matvec(const SparseMatrix& m, std::span<const double> x, std::span<double> out);
std::pair<std::size_t, double> argmin_distance(const Matrix& rows,
                                               std::span<const double> y);
std::pair<std::size_t, std::size_t> pairwise_hamming_extremes(
    const std::vector<std::vector<double>>& points);
double pairwise_min_distance(const std::vector<std::vector<double>>& points);
}  // namespace par

// Default entry points: OpenMP build uses par, otherwise serial.
void matvec(const Matrix& m, std::span<const double> x, std::span<double> out);
void matvec(const SparseMatrix& m, std::span<const double> x, std::span<double> out);
std::pair<std::size_t, double> argmin_distance(const Matrix& rows,
                                               std::span<const double> y);
std::pair<std::size_t, std::size_t> pairwise_hamming_extremes(
    const std::vector<std::vector<double>>& points);
double pairwise_min_distance(const std::vector<std::vector<double>>& points);

}  // namespace gencs::kernels
