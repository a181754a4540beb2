#include "polycert/matrix.hpp"

#include "polycert/errors.hpp"

namespace polycert {

Matrix Matrix::identity(std::size_t n, const NumberContext& ctx) {
  Matrix m(n, n, Scalar::zero(ctx));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(ctx);
  return m;
}

Matrix Matrix::column(const std::vector<Scalar>& v) {
  Matrix m;
  m.rows_ = v.size();
  m.cols_ = 1;
  m.data_ = v;
  return m;
}

std::vector<Scalar> Matrix::column_values(std::size_t c) const {
  std::vector<Scalar> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
  return out;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap(data_[a * cols_ + c], data_[b * cols_ + c]);
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  if (a.rows() == 0 || b.cols() == 0 || a.cols() == 0) throw DimensionError("matrix product of an empty matrix");
  Matrix out(a.rows(), b.cols(), a(0, 0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Scalar acc = a(i, 0) * b(0, j);
      for (std::size_t k = 1; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

}  // namespace polycert
