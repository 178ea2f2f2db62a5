#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace graphsum {

/// Dense real matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  /// Throws InputError unless entries.size() == rows * cols.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix identity(std::size_t n);
  /// Throws InputError on ragged or empty input.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  double operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  std::span<const double> data() const noexcept { return entries_; }
  std::span<double> data() noexcept { return entries_; }
  std::span<const double> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
  std::span<double> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

Matrix transpose(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
/// Kronecker product; the row index of `a` is the more significant one.
Matrix kron(const Matrix& a, const Matrix& b);

double max_abs_entry(const Matrix& m);
double frobenius_norm(const Matrix& m);

/// Largest singular value, by power iteration on the Gram matrix.
double operator_norm(const Matrix& m);

/// Sum of all entries, i.e. <1, M 1>.
double entry_sum(const Matrix& m);

}  // namespace graphsum
