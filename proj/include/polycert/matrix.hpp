#pragma once

#include <cstddef>
#include <vector>

#include "polycert/arith.hpp"

namespace polycert {

/// Dense row-major matrix of Scalars.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const Scalar& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const NumberContext& ctx);
  /// Column vector from a sequence of Scalars.
  static Matrix column(const std::vector<Scalar>& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Scalar> column_values(std::size_t c) const;
  void swap_rows(std::size_t a, std::size_t b);

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

}  // namespace polycert
