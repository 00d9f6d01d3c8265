#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "asss/la/vector_ops.hpp"

namespace asss::la {

/// A block of right-hand sides stored column-major.
class MultiVector {
 public:
  MultiVector() = default;
  MultiVector(std::size_t nrows, std::size_t ncols, double fill = 0.0);

  /// View a contiguous buffer of ncols stacked columns, e.g. a BlockVector4
  /// seen as four m-columns.
  static MultiVector from_stacked(std::span<const double> data, std::size_t ncols);

  std::size_t nrows() const noexcept { return nrows_; }
  std::size_t ncols() const noexcept { return ncols_; }

  std::span<double> col(std::size_t j) { return {data_.data() + j * nrows_, nrows_}; }
  std::span<const double> col(std::size_t j) const { return {data_.data() + j * nrows_, nrows_}; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<double> data_;
};

/// <X, Y> = trace(X^T Y).
double trace_dot(const MultiVector& x, const MultiVector& y);
double frobenius_norm(const MultiVector& x);

/// y = A x for vectors. Preconditioners use the same shape: y = P^{-1} x.
using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

/// Y = A X for blocks of columns.
using BlockOperator = std::function<void(const MultiVector&, MultiVector&)>;

/// Lift a vector operator to a block operator by applying it to each column.
BlockOperator columnwise(LinearOperator op);

}  // namespace asss::la
