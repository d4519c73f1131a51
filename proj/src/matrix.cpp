#include "gpdkit/matrix.hpp"

#include <algorithm>
#include <string>

namespace gpdkit {

namespace {

std::string shape(const MatrixC& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void same_shape(const MatrixC& a, const MatrixC& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeMismatch("matrix shapes differ: " + shape(a) + " vs " + shape(b));
  }
}

}  // namespace

MatrixC::MatrixC(std::size_t rows, std::size_t cols, std::vector<value_type> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw ShapeMismatch("matrix " + shape(*this) + " given " + std::to_string(data_.size()) +
                        " entries");
  }
}

MatrixC MatrixC::identity(std::size_t n) {
  MatrixC m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

MatrixC MatrixC::unit(std::size_t rows, std::size_t cols, std::size_t row, std::size_t col) {
  MatrixC m(rows, cols);
  m(row, col) = 1.0;
  return m;
}

MatrixC MatrixC::adjoint() const {
  MatrixC out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

MatrixC& MatrixC::operator+=(const MatrixC& other) {
  same_shape(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

MatrixC& MatrixC::operator-=(const MatrixC& other) {
  same_shape(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

MatrixC& MatrixC::operator*=(value_type s) {
  for (auto& v : data_) v *= s;
  return *this;
}

MatrixC operator*(const MatrixC& a, const MatrixC& b) {
  if (a.cols() != b.rows()) {
    throw ShapeMismatch("cannot multiply " + shape(a) + " by " + shape(b));
  }
  MatrixC out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto aik = a(i, k);
      if (aik == MatrixC::value_type{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::vector<std::complex<double>> operator*(const MatrixC& a,
                                            const std::vector<std::complex<double>>& v) {
  if (a.cols() != v.size()) throw ShapeMismatch("matrix-vector size mismatch");
  std::vector<std::complex<double>> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::complex<double> s{};
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * v[k];
    out[i] = s;
  }
  return out;
}

double max_abs_difference(const MatrixC& a, const MatrixC& b) {
  same_shape(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

}  // namespace gpdkit
