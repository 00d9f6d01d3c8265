#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "asss/la/vector_ops.hpp"

namespace asss::la {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed sparse row matrix. Column indices are strictly increasing
/// inside each row; the object is immutable once built.
class CsrMatrix {
 public:
  CsrMatrix() = default;

  /// Takes ownership of the arrays and validates the CSR invariants.
  CsrMatrix(std::size_t nrows, std::size_t ncols, std::vector<std::size_t> row_offsets,
            std::vector<std::size_t> col_indices, std::vector<double> values);

  /// Duplicate (row, col) entries are summed. Explicit zeros are kept.
  static CsrMatrix from_triplets(std::size_t nrows, std::size_t ncols,
                                 std::span<const Triplet> entries);
  static CsrMatrix identity(std::size_t n);
  static CsrMatrix diagonal(std::span<const double> d);

  std::size_t nrows() const noexcept { return nrows_; }
  std::size_t ncols() const noexcept { return ncols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_offsets() const noexcept { return row_offsets_; }
  std::span<const std::size_t> col_indices() const noexcept { return col_indices_; }
  std::span<const double> values() const noexcept { return values_; }

  std::span<const std::size_t> row_cols(std::size_t i) const {
    return {col_indices_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
  }
  std::span<const double> row_values(std::size_t i) const {
    return {values_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
  }

  /// Stored value at (i, j), or 0 when the entry is not stored.
  double at(std::size_t i, std::size_t j) const;
  Vector diagonal() const;

  /// y = A x. Summation runs over each row in stored order.
  void multiply(std::span<const double> x, std::span<double> y) const;
  Vector multiply(std::span<const double> x) const;

  /// Exact symmetry audit: every stored (i, j) has a stored (j, i) whose value
  /// differs by at most tol.
  bool is_symmetric(double tol = 0.0) const;

  CsrMatrix transpose() const;

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
};

inline Vector spmv(const CsrMatrix& a, std::span<const double> x) { return a.multiply(x); }

/// a*A + b*B on the union pattern.
CsrMatrix linear_combination(double a, const CsrMatrix& A, double b, const CsrMatrix& B);

/// A + shift*I.
CsrMatrix shifted(const CsrMatrix& A, double shift);

/// a*A.
CsrMatrix scaled(const CsrMatrix& A, double a);

/// Euclidean norm of each row.
Vector row_norms(const CsrMatrix& A);

}  // namespace asss::la
