#include "asss/la/csr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace asss::la {

CsrMatrix::CsrMatrix(std::size_t nrows, std::size_t ncols, std::vector<std::size_t> row_offsets,
                     std::vector<std::size_t> col_indices, std::vector<double> values)
    : nrows_(nrows),
      ncols_(ncols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  if (row_offsets_.size() != nrows_ + 1) {
    throw DimensionError("CsrMatrix: row_offsets must have nrows+1 entries");
  }
  if (row_offsets_.front() != 0 || row_offsets_.back() != values_.size() ||
      col_indices_.size() != values_.size()) {
    throw DimensionError("CsrMatrix: offsets inconsistent with stored values");
  }
  for (std::size_t i = 0; i < nrows_; ++i) {
    if (row_offsets_[i] > row_offsets_[i + 1]) {
      throw DimensionError("CsrMatrix: row_offsets decreasing at row " + std::to_string(i));
    }
    for (std::size_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      if (col_indices_[p] >= ncols_) {
        throw DimensionError("CsrMatrix: column index out of range in row " + std::to_string(i));
      }
      if (p > row_offsets_[i] && col_indices_[p] <= col_indices_[p - 1]) {
        throw DimensionError("CsrMatrix: columns not strictly increasing in row " +
                             std::to_string(i));
      }
    }
  }
}

CsrMatrix CsrMatrix::from_triplets(std::size_t nrows, std::size_t ncols,
                                   std::span<const Triplet> entries) {
  std::vector<std::size_t> counts(nrows + 1, 0);
  for (const auto& t : entries) {
    if (t.row >= nrows || t.col >= ncols) {
      throw DimensionError("from_triplets: entry out of range");
    }
    ++counts[t.row + 1];
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  std::vector<std::size_t> cols(entries.size());
  std::vector<double> vals(entries.size());
  std::vector<std::size_t> next(counts.begin(), counts.end() - 1);
  for (const auto& t : entries) {
    const std::size_t p = next[t.row]++;
    cols[p] = t.col;
    vals[p] = t.value;
  }

  std::vector<std::size_t> offsets(nrows + 1, 0);
  std::vector<std::size_t> out_cols;
  std::vector<double> out_vals;
  out_cols.reserve(entries.size());
  out_vals.reserve(entries.size());
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < nrows; ++i) {
    order.resize(counts[i + 1] - counts[i]);
    std::iota(order.begin(), order.end(), counts[i]);
    // stable sort keeps duplicate summation in insertion order
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cols[a] < cols[b]; });
    for (std::size_t q = 0; q < order.size(); ++q) {
      const std::size_t p = order[q];
      if (q > 0 && cols[p] == out_cols.back()) {
        out_vals.back() += vals[p];
      } else {
        out_cols.push_back(cols[p]);
        out_vals.push_back(vals[p]);
      }
    }
    offsets[i + 1] = out_cols.size();
  }
  return CsrMatrix(nrows, ncols, std::move(offsets), std::move(out_cols), std::move(out_vals));
}

CsrMatrix CsrMatrix::identity(std::size_t n) {
  Vector ones(n, 1.0);
  return diagonal(ones);
}

CsrMatrix CsrMatrix::diagonal(std::span<const double> d) {
  const std::size_t n = d.size();
  std::vector<std::size_t> offsets(n + 1);
  std::iota(offsets.begin(), offsets.end(), std::size_t{0});
  std::vector<std::size_t> cols(n);
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  return CsrMatrix(n, n, std::move(offsets), std::move(cols), Vector(d.begin(), d.end()));
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
  const auto cols = row_cols(i);
  const auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return 0.0;
  return values_[row_offsets_[i] + static_cast<std::size_t>(it - cols.begin())];
}

Vector CsrMatrix::diagonal() const {
  Vector d(std::min(nrows_, ncols_), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = at(i, i);
  return d;
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != ncols_ || y.size() != nrows_) {
    throw DimensionError("spmv: expected x of length " + std::to_string(ncols_) + ", got " +
                         std::to_string(x.size()));
  }
  for (std::size_t i = 0; i < nrows_; ++i) {
    double s = 0.0;
    for (std::size_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      s += values_[p] * x[col_indices_[p]];
    }
    y[i] = s;
  }
}

Vector CsrMatrix::multiply(std::span<const double> x) const {
  Vector y(nrows_);
  multiply(x, y);
  return y;
}

bool CsrMatrix::is_symmetric(double tol) const {
  if (nrows_ != ncols_) return false;
  for (std::size_t i = 0; i < nrows_; ++i) {
    const auto cols = row_cols(i);
    const auto vals = row_values(i);
    for (std::size_t q = 0; q < cols.size(); ++q) {
      const std::size_t j = cols[q];
      const auto other = row_cols(j);
      const auto it = std::lower_bound(other.begin(), other.end(), i);
      if (it == other.end() || *it != i) return false;
      const double vji = values_[row_offsets_[j] + static_cast<std::size_t>(it - other.begin())];
      if (std::abs(vji - vals[q]) > tol) return false;
    }
  }
  return true;
}

CsrMatrix CsrMatrix::transpose() const {
  std::vector<std::size_t> offsets(ncols_ + 1, 0);
  for (std::size_t c : col_indices_) ++offsets[c + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<std::size_t> next(offsets.begin(), offsets.end() - 1);
  std::vector<std::size_t> cols(nnz());
  Vector vals(nnz());
  for (std::size_t i = 0; i < nrows_; ++i) {
    for (std::size_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      const std::size_t q = next[col_indices_[p]]++;
      cols[q] = i;
      vals[q] = values_[p];
    }
  }
  return CsrMatrix(ncols_, nrows_, std::move(offsets), std::move(cols), std::move(vals));
}

CsrMatrix linear_combination(double a, const CsrMatrix& A, double b, const CsrMatrix& B) {
  if (A.nrows() != B.nrows() || A.ncols() != B.ncols()) {
    throw DimensionError("linear_combination: shape mismatch");
  }
  std::vector<std::size_t> offsets(A.nrows() + 1, 0);
  std::vector<std::size_t> cols;
  Vector vals;
  cols.reserve(A.nnz() + B.nnz());
  vals.reserve(A.nnz() + B.nnz());
  for (std::size_t i = 0; i < A.nrows(); ++i) {
    const auto ca = A.row_cols(i), cb = B.row_cols(i);
    const auto va = A.row_values(i), vb = B.row_values(i);
    std::size_t p = 0, q = 0;
    while (p < ca.size() || q < cb.size()) {
      if (q == cb.size() || (p < ca.size() && ca[p] < cb[q])) {
        cols.push_back(ca[p]);
        vals.push_back(a * va[p]);
        ++p;
      } else if (p == ca.size() || cb[q] < ca[p]) {
        cols.push_back(cb[q]);
        vals.push_back(b * vb[q]);
        ++q;
      } else {
        cols.push_back(ca[p]);
        vals.push_back(a * va[p] + b * vb[q]);
        ++p;
        ++q;
      }
    }
    offsets[i + 1] = cols.size();
  }
  return CsrMatrix(A.nrows(), A.ncols(), std::move(offsets), std::move(cols), std::move(vals));
}

CsrMatrix shifted(const CsrMatrix& A, double shift) {
  if (A.nrows() != A.ncols()) throw DimensionError("shifted: matrix must be square");
  return linear_combination(1.0, A, shift, CsrMatrix::identity(A.nrows()));
}

CsrMatrix scaled(const CsrMatrix& A, double a) {
  std::vector<std::size_t> offsets(A.row_offsets().begin(), A.row_offsets().end());
  std::vector<std::size_t> cols(A.col_indices().begin(), A.col_indices().end());
  Vector vals(A.values().begin(), A.values().end());
  for (double& v : vals) v *= a;
  return CsrMatrix(A.nrows(), A.ncols(), std::move(offsets), std::move(cols), std::move(vals));
}

Vector row_norms(const CsrMatrix& A) {
  Vector r(A.nrows());
  for (std::size_t i = 0; i < A.nrows(); ++i) r[i] = norm2(A.row_values(i));
  return r;
}

}  // namespace asss::la
