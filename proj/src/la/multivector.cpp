#include "asss/la/multivector.hpp"

#include <cmath>
#include <utility>

namespace asss::la {

MultiVector::MultiVector(std::size_t nrows, std::size_t ncols, double fill)
    : nrows_(nrows), ncols_(ncols), data_(nrows * ncols, fill) {
  if (ncols == 0) throw DimensionError("MultiVector: ncols must be at least 1");
}

MultiVector MultiVector::from_stacked(std::span<const double> data, std::size_t ncols) {
  if (ncols == 0 || data.size() % ncols != 0) {
    throw DimensionError("MultiVector::from_stacked: length not divisible by column count");
  }
  MultiVector x(data.size() / ncols, ncols);
  copy(data, x.data());
  return x;
}

double trace_dot(const MultiVector& x, const MultiVector& y) {
  if (x.nrows() != y.nrows() || x.ncols() != y.ncols()) {
    throw DimensionError("trace_dot: shape mismatch");
  }
  return dot(x.data(), y.data());
}

double frobenius_norm(const MultiVector& x) { return std::sqrt(trace_dot(x, x)); }

BlockOperator columnwise(LinearOperator op) {
  return [op = std::move(op)](const MultiVector& x, MultiVector& y) {
    for (std::size_t j = 0; j < x.ncols(); ++j) op(x.col(j), y.col(j));
  };
}

}  // namespace asss::la
