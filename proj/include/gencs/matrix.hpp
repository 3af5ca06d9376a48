#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace gencs {

// Dense row-major matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  // rows * cols

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(a).subspan(r * cols, cols);
  }
};

// Compressed sparse rows; used for the very wide generator layers where the
// dense form would not fit in memory.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr;  // rows + 1
  std::vector<std::size_t> col_idx;
  std::vector<double> vals;

  SparseMatrix() = default;
  SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), row_ptr(r + 1, 0) {}
};

// Builder that fills a SparseMatrix one row at a time, in order.
class SparseBuilder {
 public:
  SparseBuilder(std::size_t rows, std::size_t cols) : m_(rows, cols) {}
  // Rows must be appended in ascending order.
  void add(std::size_t row, std::size_t col, double v);
  SparseMatrix finish();

 private:
  SparseMatrix m_;
  std::size_t current_row_ = 0;
};

// A layer weight matrix, stored dense or sparse behind one interface.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(Matrix dense) : w_(std::move(dense)) {}
  explicit WeightMatrix(SparseMatrix sparse) : w_(std::move(sparse)) {}

  std::size_t rows() const;
  std::size_t cols() const;
  bool is_sparse() const { return std::holds_alternative<SparseMatrix>(w_); }

  void matvec(std::span<const double> x, std::span<double> out) const;
  // out += W^T g  (used by the latent recovery subgradient).
  void add_transposed_matvec(std::span<const double> g, std::span<double> out) const;

  double entry(std::size_t r, std::size_t c) const;
  Matrix to_dense() const;

 private:
  std::variant<Matrix, SparseMatrix> w_;
};

// Small vector helpers shared across the modules.
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double dist2(std::span<const double> a, std::span<const double> b);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
std::size_t count_nonzero(std::span<const double> a);

}  // namespace gencs
