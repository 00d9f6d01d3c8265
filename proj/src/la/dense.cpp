#include "asss/la/dense.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace asss::la {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = 1.0;
  return a;
}

DenseMatrix DenseMatrix::from_csr(const CsrMatrix& s) {
  DenseMatrix a(s.nrows(), s.ncols());
  for (std::size_t i = 0; i < s.nrows(); ++i) {
    const auto cols = s.row_cols(i);
    const auto vals = s.row_values(i);
    for (std::size_t q = 0; q < cols.size(); ++q) a(i, cols[q]) += vals[q];
  }
  return a;
}

Vector DenseMatrix::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void DenseMatrix::set_column(std::size_t j, std::span<const double> v) {
  check_same_size(v.size(), rows_, "DenseMatrix::set_column");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vector DenseMatrix::multiply(std::span<const double> x) const {
  check_same_size(x.size(), cols_, "DenseMatrix::multiply");
  Vector y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    const double* r = data_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionError("DenseMatrix +=: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionError("DenseMatrix -=: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double a) {
  for (double& v : data_) v *= a;
  return *this;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("DenseMatrix product: inner dimension mismatch");
  DenseMatrix c(a.rows(), b.cols());
  // i-k-j loop order keeps the inner loop contiguous in row-major storage
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

double max_abs_entry(const DenseMatrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  return max_abs_diff(a.data(), b.data());
}

LuFactor::LuFactor(DenseMatrix a) : lu_(std::move(a)), pivots_(lu_.rows()) {
  const std::size_t n = lu_.rows();
  if (lu_.cols() != n) throw DimensionError("LuFactor: matrix must be square");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        p = i;
      }
    }
    if (best == 0.0) throw Error("LuFactor: matrix is singular");
    pivots_[k] = p;
    if (p != k) {
      auto rk = lu_.row(k), rp = lu_.row(p);
      std::swap_ranges(rk.begin(), rk.end(), rp.begin());
    }
    const double inv = 1.0 / lu_(k, k);
    const auto rk = lu_.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      auto ri = lu_.row(i);
      const double f = ri[k] * inv;
      ri[k] = f;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= f * rk[j];
    }
  }
}

Vector LuFactor::solve(std::span<const double> b) const {
  const std::size_t n = lu_.rows();
  check_same_size(b.size(), n, "LuFactor::solve");
  Vector x(b.begin(), b.end());
  for (std::size_t k = 0; k < n; ++k) std::swap(x[k], x[pivots_[k]]);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ri = lu_.row(i);
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= ri[j] * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    const auto ri = lu_.row(i);
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= ri[j] * x[j];
    x[i] = s / ri[i];
  }
  return x;
}

DenseMatrix LuFactor::solve(const DenseMatrix& b) const {
  // Solve the transposed problem row-wise so every right-hand side is contiguous.
  const std::size_t n = lu_.rows();
  if (b.rows() != n) throw DimensionError("LuFactor::solve: row mismatch");
  DenseMatrix x = b;
  for (std::size_t k = 0; k < n; ++k) {
    if (pivots_[k] != k) {
      auto rk = x.row(k), rp = x.row(pivots_[k]);
      std::swap_ranges(rk.begin(), rk.end(), rp.begin());
    }
  }
  const std::size_t m = b.cols();
  for (std::size_t i = 0; i < n; ++i) {
    auto xi = x.row(i);
    for (std::size_t j = 0; j < i; ++j) {
      const double l = lu_(i, j);
      if (l == 0.0) continue;
      const auto xj = x.row(j);
      for (std::size_t c = 0; c < m; ++c) xi[c] -= l * xj[c];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    auto xi = x.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double u = lu_(i, j);
      if (u == 0.0) continue;
      const auto xj = x.row(j);
      for (std::size_t c = 0; c < m; ++c) xi[c] -= u * xj[c];
    }
    const double inv = 1.0 / lu_(i, i);
    for (std::size_t c = 0; c < m; ++c) xi[c] *= inv;
  }
  return x;
}

DenseMatrix LuFactor::inverse() const { return solve(DenseMatrix::identity(lu_.rows())); }

}  // namespace asss::la
