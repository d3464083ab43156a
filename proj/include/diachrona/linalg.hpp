#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace diachrona {

/// Small dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  /// Throws std::invalid_argument on ragged input.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }
  std::span<const double> row(std::size_t r) const noexcept {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }

  Matrix transposed() const;
  double frobenius_norm() const noexcept;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Thin SVD A = U diag(s) V^T with p = min(rows, cols) singular values in
/// non-increasing order. U is rows x p and V is cols x p, both with
/// orthonormal columns (columns for zero singular values are completed to
/// an orthonormal basis).
struct Svd {
  Matrix u;
  std::vector<double> singular_values;
  Matrix v;
};

/// One-sided (Hestenes) Jacobi SVD. Signs are normalized so the entry of
/// largest magnitude in each column of U is positive (first such entry on
/// ties).
Svd jacobi_svd(const Matrix& a);

}  // namespace diachrona
