#include "graphsum/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "graphsum/errors.hpp"
#include "graphsum/kernels.hpp"

namespace graphsum {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols)
    throw InputError("matrix: " + std::to_string(entries_.size()) + " entries for shape " + std::to_string(rows) +
                     "x" + std::to_string(cols));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw InputError("matrix: no entries");
  const std::size_t cols = rows.front().size();
  std::vector<double> entries;
  entries.reserve(rows.size() * cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw InputError("matrix: row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                       " entries, expected " + std::to_string(cols));
    entries.insert(entries.end(), rows[r].begin(), rows[r].end());
  }
  return Matrix(rows.size(), cols, std::move(entries));
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw InputError("multiply: shapes " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " and " +
                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double s = a(i, k);
      if (s != 0.0) kernels::axpy(s, b.row(k), out);
    }
  }
  return c;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double s = a(i, j);
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = s * b(p, q);
    }
  return k;
}

double max_abs_entry(const Matrix& m) {
  double best = 0.0;
  for (double x : m.data()) best = std::max(best, std::abs(x));
  return best;
}

double frobenius_norm(const Matrix& m) { return std::sqrt(kernels::dot(m.data(), m.data())); }

double entry_sum(const Matrix& m) { return kernels::sum(m.data()); }

namespace {

constexpr double kRayleighTol = 1e-12;
constexpr std::size_t kMaxIterations = 100'000;
constexpr std::size_t kMaxSquarings = 12;
constexpr std::size_t kSquaringSideLimit = 128;

// Gram matrix on the smaller side; its top eigenvalue is ||m||^2.
Matrix gram(const Matrix& m) {
  const bool left = m.cols() <= m.rows();
  const std::size_t n = left ? m.cols() : m.rows();
  Matrix g(n, n);
  const Matrix mt = transpose(m);
  const Matrix& rows_src = left ? mt : m;  // each row is a column (left) or row of m
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) g(i, j) = g(j, i) = kernels::dot(rows_src.row(i), rows_src.row(j));
  return g;
}

double rayleigh(const Matrix& g, std::span<const double> x, std::vector<double>& scratch) {
  kernels::gemv(g.data(), g.rows(), g.cols(), x, scratch);
  return kernels::dot(x, scratch);
}

bool normalize(std::vector<double>& v) {
  const double n = std::sqrt(kernels::dot(v, v));
  if (!(n > 0.0) || !std::isfinite(n)) return false;
  for (double& x : v) x /= n;
  return true;
}

// Power iteration with `accel` as the iteration operator; the returned value is
// the Rayleigh quotient of the final vector against the true Gram matrix.
double power_iterate(const Matrix& g, const Matrix& accel, std::vector<double> x) {
  const std::size_t n = g.rows();
  if (!normalize(x)) return 0.0;
  std::vector<double> y(n), scratch(n);
  double prev = rayleigh(g, x, scratch);
  for (std::size_t it = 0; it < kMaxIterations; ++it) {
    kernels::gemv(accel.data(), n, n, x, y);
    if (!normalize(y)) return prev;  // stalled: x is in the null space of accel
    x.swap(y);
    const double cur = rayleigh(g, x, scratch);
    if (std::abs(cur - prev) <= kRayleighTol * std::max(std::abs(cur), 1e-300)) return std::max(cur, prev);
    prev = cur;
  }
  return prev;
}

}  // namespace

double operator_norm(const Matrix& m) {
  if (m.empty()) return 0.0;
  const Matrix g = gram(m);
  const std::size_t n = g.rows();

  // Repeated squaring sharpens the spectral gap before iterating.
  Matrix accel = g;
  if (n <= kSquaringSideLimit) {
    for (std::size_t s = 0; s < kMaxSquarings; ++s) {
      const double scale = max_abs_entry(accel);
      if (!(scale > 0.0)) break;
      for (double& x : accel.data()) x /= scale;
      accel = multiply(accel, accel);
    }
    const double scale = max_abs_entry(accel);
    if (scale > 0.0)
      for (double& x : accel.data()) x /= scale;
  }

  double lambda = power_iterate(g, accel, std::vector<double>(n, 1.0));
  // Fixed pseudo-random restart covers starts orthogonal to the top singular vector.
  std::mt19937_64 rng(0x5eedu);
  std::vector<double> start(n);
  for (double& x : start) x = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  lambda = std::max(lambda, power_iterate(g, accel, std::move(start)));
  // Squaring can drive the accelerated operator to zero for tiny norms.
  if (!(lambda > 0.0)) lambda = std::max(0.0, power_iterate(g, g, std::vector<double>(n, 1.0)));
  return std::sqrt(std::max(lambda, 0.0));
}

}  // namespace graphsum
