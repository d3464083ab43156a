#include "diachrona/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace diachrona {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double Matrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Matrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      double v = a(i, k);
      if (v == 0.0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += v * b(k, j);
    }
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix difference shape mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Hestenes iteration on a tall (rows >= cols) matrix.
Svd tall_svd(const Matrix& a) {
  const auto m = a.rows();
  const auto n = a.cols();
  Matrix w = a;
  Matrix v = Matrix::identity(n);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0, beta = 0, gamma = 0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += w(i, p) * w(i, p);
          beta += w(i, q) * w(i, q);
          gamma += w(i, p) * w(i, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        double zeta = (beta - alpha) / (2.0 * gamma);
        double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        double c = 1.0 / std::hypot(1.0, t);
        double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          double wp = w(i, p), wq = w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0;
    for (std::size_t i = 0; i < m; ++i) s += w(i, j) * w(i, j);
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  Svd out{Matrix(m, n), std::vector<double>(n), Matrix(n, n)};
  const double cutoff = (n ? sigma[order[0]] : 0.0) * kEps * static_cast<double>(std::max(m, n));
  std::vector<bool> filled(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    auto j = order[k];
    out.singular_values[k] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, j);
    if (sigma[j] > cutoff && sigma[j] > 0.0) {
      for (std::size_t i = 0; i < m; ++i) out.u(i, k) = w(i, j) / sigma[j];
      filled[k] = true;
    }
  }

  // Complete U with the basis vector that keeps the most mass after
  // projecting out the filled columns; the complement always holds one with
  // norm at least 1/sqrt(m).
  auto project_out = [&](std::vector<double>& cand) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t c = 0; c < n; ++c) {
        if (!filled[c]) continue;
        double dot = 0;
        for (std::size_t i = 0; i < m; ++i) dot += out.u(i, c) * cand[i];
        for (std::size_t i = 0; i < m; ++i) cand[i] -= dot * out.u(i, c);
      }
  };
  for (std::size_t k = 0; k < n; ++k) {
    if (filled[k]) continue;
    std::vector<double> best;
    double best_norm = -1;
    for (std::size_t e = 0; e < m; ++e) {
      std::vector<double> cand(m, 0.0);
      cand[e] = 1.0;
      project_out(cand);
      double norm = 0;
      for (double x : cand) norm += x * x;
      if (norm > best_norm) {
        best_norm = norm;
        best = std::move(cand);
      }
    }
    best_norm = std::sqrt(best_norm);
    for (std::size_t i = 0; i < m; ++i) out.u(i, k) = best[i] / best_norm;
    filled[k] = true;
  }

  return out;
}

void normalize_signs(Svd& svd) {
  const auto m = svd.u.rows();
  for (std::size_t k = 0; k < svd.singular_values.size(); ++k) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < m; ++i)
      if (std::abs(svd.u(i, k)) > std::abs(svd.u(arg, k))) arg = i;
    if (m > 0 && svd.u(arg, k) < 0) {
      for (std::size_t i = 0; i < m; ++i) svd.u(i, k) = -svd.u(i, k);
      for (std::size_t i = 0; i < svd.v.rows(); ++i) svd.v(i, k) = -svd.v(i, k);
    }
  }
}

}  // namespace

Svd jacobi_svd(const Matrix& a) {
  Svd out;
  if (a.rows() >= a.cols()) {
    out = tall_svd(a);
  } else {
    auto t = tall_svd(a.transposed());
    out = Svd{std::move(t.v), std::move(t.singular_values), std::move(t.u)};
  }
  normalize_signs(out);
  return out;
}

}  // namespace diachrona
