#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "gpdkit/error.hpp"

namespace gpdkit {

// Dense complex matrix, row-major.
class MatrixC {
 public:
  using value_type = std::complex<double>;

  MatrixC() = default;
  MatrixC(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  // Throws ShapeMismatch when entries.size() != rows * cols.
  MatrixC(std::size_t rows, std::size_t cols, std::vector<value_type> entries);

  static MatrixC identity(std::size_t n);
  // Single 1 at (row, col).
  static MatrixC unit(std::size_t rows, std::size_t cols, std::size_t row, std::size_t col);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  const std::vector<value_type>& entries() const noexcept { return data_; }

  value_type& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const value_type& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  MatrixC adjoint() const;

  MatrixC& operator+=(const MatrixC& other);
  MatrixC& operator-=(const MatrixC& other);
  MatrixC& operator*=(value_type s);

  friend MatrixC operator+(MatrixC a, const MatrixC& b) { return a += b; }
  friend MatrixC operator-(MatrixC a, const MatrixC& b) { return a -= b; }
  friend MatrixC operator*(value_type s, MatrixC a) { return a *= s; }
  friend MatrixC operator*(const MatrixC& a, const MatrixC& b);

  // Exact entrywise equality.
  friend bool operator==(const MatrixC& a, const MatrixC& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

std::vector<std::complex<double>> operator*(const MatrixC& a, const std::vector<std::complex<double>>& v);

// Throws ShapeMismatch for differently shaped operands.
double max_abs_difference(const MatrixC& a, const MatrixC& b);

}  // namespace gpdkit
