#include "gencs/matrix.hpp"

#include <cassert>
#include <cmath>

#include "gencs/kernels.hpp"

namespace gencs {

void SparseBuilder::add(std::size_t row, std::size_t col, double v) {
  assert(row >= current_row_ && row < m_.rows && col < m_.cols);
  while (current_row_ < row) m_.row_ptr[++current_row_] = m_.col_idx.size();
  m_.col_idx.push_back(col);
  m_.vals.push_back(v);
}

SparseMatrix SparseBuilder::finish() {
  while (current_row_ < m_.rows) m_.row_ptr[++current_row_] = m_.col_idx.size();
  return std::move(m_);
}

std::size_t WeightMatrix::rows() const {
  return std::visit([](const auto& m) { return m.rows; }, w_);
}

std::size_t WeightMatrix::cols() const {
  return std::visit([](const auto& m) { return m.cols; }, w_);
}

void WeightMatrix::matvec(std::span<const double> x, std::span<double> out) const {
  std::visit([&](const auto& m) { kernels::matvec(m, x, out); }, w_);
}

void WeightMatrix::add_transposed_matvec(std::span<const double> g,
                                         std::span<double> out) const {
  if (const Matrix* d = std::get_if<Matrix>(&w_)) {
    for (std::size_t r = 0; r < d->rows; ++r) {
      const double gr = g[r];
      if (gr == 0.0) continue;
      const double* row = d->a.data() + r * d->cols;
      for (std::size_t c = 0; c < d->cols; ++c) out[c] += row[c] * gr;
    }
  } else {
    const SparseMatrix& s = std::get<SparseMatrix>(w_);
    for (std::size_t r = 0; r < s.rows; ++r) {
      const double gr = g[r];
      if (gr == 0.0) continue;
      for (std::size_t p = s.row_ptr[r]; p < s.row_ptr[r + 1]; ++p)
        out[s.col_idx[p]] += s.vals[p] * gr;
    }
  }
}

double WeightMatrix::entry(std::size_t r, std::size_t c) const {
  if (const Matrix* d = std::get_if<Matrix>(&w_)) return (*d)(r, c);
  const SparseMatrix& s = std::get<SparseMatrix>(w_);
  for (std::size_t p = s.row_ptr[r]; p < s.row_ptr[r + 1]; ++p)
    if (s.col_idx[p] == c) return s.vals[p];
  return 0.0;
}

Matrix WeightMatrix::to_dense() const {
  if (const Matrix* d = std::get_if<Matrix>(&w_)) return *d;
  const SparseMatrix& s = std::get<SparseMatrix>(w_);
  Matrix d(s.rows, s.cols);
  for (std::size_t r = 0; r < s.rows; ++r)
    for (std::size_t p = s.row_ptr[r]; p < s.row_ptr[r + 1]; ++p)
      d(r, s.col_idx[p]) = s.vals[p];
  return d;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double dist2(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    if (d > m) m = d;
  }
  return m;
}

std::size_t count_nonzero(std::span<const double> a) {
  std::size_t c = 0;
  for (double v : a) c += (v != 0.0) ? 1 : 0;
  return c;
}

}  // namespace gencs
