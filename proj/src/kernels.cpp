#include "gencs/kernels.hpp"

#include <cmath>
#include <limits>

namespace gencs::kernels {

namespace {

inline double row_dot(const Matrix& m, std::size_t r, std::span<const double> x) {
  const double* a = m.a.data() + r * m.cols;
  double acc = 0.0;
  for (std::size_t j = 0; j < m.cols; ++j) acc += a[j] * x[j];
  return acc;
}

inline double sparse_row_dot(const SparseMatrix& m, std::size_t r,
                             std::span<const double> x) {
  double acc = 0.0;
  for (std::size_t p = m.row_ptr[r]; p < m.row_ptr[r + 1]; ++p)
    acc += m.vals[p] * x[m.col_idx[p]];
  return acc;
}

inline double row_dist2(const Matrix& rows, std::size_t r, std::span<const double> y) {
  const double* a = rows.a.data() + r * rows.cols;
  double acc = 0.0;
  for (std::size_t j = 0; j < rows.cols; ++j) {
    const double d = a[j] - y[j];
    acc += d * d;
  }
  return acc;
}

inline std::size_t hamming(const std::vector<double>& a, const std::vector<double>& b) {
  std::size_t h = 0;
  for (std::size_t j = 0; j < a.size(); ++j) h += (a[j] != b[j]) ? 1 : 0;
  return h;
}

inline double pair_dist2(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    acc += d * d;
  }
  return acc;
}

}  // namespace

namespace serial {

void matvec(const Matrix& m, std::span<const double> x, std::span<double> out) {
  for (std::size_t r = 0; r < m.rows; ++r) out[r] = row_dot(m, r, x);
}

void matvec(const SparseMatrix& m, std::span<const double> x, std::span<double> out) {
  for (std::size_t r = 0; r < m.rows; ++r) out[r] = sparse_row_dot(m, r, x);
}

std::pair<std::size_t, double> argmin_distance(const Matrix& rows,
                                               std::span<const double> y) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < rows.rows; ++r) {
    const double d = row_dist2(rows, r, y);
    if (d < best_d) {
      best_d = d;
      best = r;
    }
  }
  return {best, std::sqrt(best_d)};
}

std::pair<std::size_t, std::size_t> pairwise_hamming_extremes(
    const std::vector<std::vector<double>>& points) {
  std::size_t lo = points[0].size() + 1, hi = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const std::size_t h = hamming(points[i], points[j]);
      if (h < lo) lo = h;
      if (h > hi) hi = h;
    }
  return {lo, hi};
}

double pairwise_min_distance(const std::vector<std::vector<double>>& points) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double d = pair_dist2(points[i], points[j]);
      if (d < best) best = d;
    }
  return std::sqrt(best);
}

}  // namespace serial

namespace par {

void matvec(const Matrix& m, std::span<const double> x, std::span<double> out) {
  const std::int64_t rows = static_cast<std::int64_t>(m.rows);
#pragma omp parallel for schedule(static) if (rows >= 64)
  for (std::int64_t r = 0; r < rows; ++r)
    out[static_cast<std::size_t>(r)] = row_dot(m, static_cast<std::size_t>(r), x);
}

void matvec(const SparseMatrix& m, std::span<const double> x, std::span<double> out) {
  const std::int64_t rows = static_cast<std::int64_t>(m.rows);
#pragma omp parallel for schedule(static) if (rows >= 256)
  for (std::int64_t r = 0; r < rows; ++r)
    out[static_cast<std::size_t>(r)] =
        sparse_row_dot(m, static_cast<std::size_t>(r), x);
}

std::pair<std::size_t, double> argmin_distance(const Matrix& rows,
                                               std::span<const double> y) {
  const std::int64_t n = static_cast<std::int64_t>(rows.rows);
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
#pragma omp parallel if (n >= 128)
  {
    std::size_t lbest = 0;
    double lbest_d = std::numeric_limits<double>::infinity();
#pragma omp for schedule(static) nowait
    for (std::int64_t r = 0; r < n; ++r) {
      const double d = row_dist2(rows, static_cast<std::size_t>(r), y);
      if (d < lbest_d || (d == lbest_d && static_cast<std::size_t>(r) < lbest)) {
        lbest_d = d;
        lbest = static_cast<std::size_t>(r);
      }
    }
#pragma omp critical
    {
      if (lbest_d < best_d || (lbest_d == best_d && lbest < best)) {
        best_d = lbest_d;
        best = lbest;
      }
    }
  }
  return {best, std::sqrt(best_d)};
}

std::pair<std::size_t, std::size_t> pairwise_hamming_extremes(
    const std::vector<std::vector<double>>& points) {
  const std::int64_t n = static_cast<std::int64_t>(points.size());
  std::size_t lo = points[0].size() + 1, hi = 0;
#pragma omp parallel if (n >= 32)
  {
    std::size_t llo = points[0].size() + 1, lhi = 0;
#pragma omp for schedule(dynamic) nowait
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = i + 1; j < n; ++j) {
        const std::size_t h = hamming(points[static_cast<std::size_t>(i)],
                                      points[static_cast<std::size_t>(j)]);
        if (h < llo) llo = h;
        if (h > lhi) lhi = h;
      }
#pragma omp critical
    {
      if (llo < lo) lo = llo;
      if (lhi > hi) hi = lhi;
    }
  }
  return {lo, hi};
}

double pairwise_min_distance(const std::vector<std::vector<double>>& points) {
  const std::int64_t n = static_cast<std::int64_t>(points.size());
  double best = std::numeric_limits<double>::infinity();
#pragma omp parallel if (n >= 32)
  {
    double lbest = std::numeric_limits<double>::infinity();
#pragma omp for schedule(dynamic) nowait
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = i + 1; j < n; ++j) {
        const double d = pair_dist2(points[static_cast<std::size_t>(i)],
                                    points[static_cast<std::size_t>(j)]);
        if (d < lbest) lbest = d;
      }
#pragma omp critical
    {
      if (lbest < best) best = lbest;
    }
  }
  return std::sqrt(best);
}

}  // namespace par

#ifdef _OPENMP
namespace impl = par;
#else
namespace impl = serial;
#endif

void matvec(const Matrix& m, std::span<const double> x, std::span<double> out) {
  impl::matvec(m, x, out);
}
void matvec(const SparseMatrix& m, std::span<const double> x, std::span<double> out) {
  impl::matvec(m, x, out);
}
std::pair<std::size_t, double> argmin_distance(const Matrix& rows,
                                               std::span<const double> y) {
  return impl::argmin_distance(rows, y);
}
std::pair<std::size_t, std::size_t> pairwise_hamming_extremes(
    const std::vector<std::vector<double>>& points) {
  return impl::pairwise_hamming_extremes(points);
}
double pairwise_min_distance(const std::vector<std::vector<double>>& points) {
  return impl::pairwise_min_distance(points);
}

}  // namespace gencs::kernels
