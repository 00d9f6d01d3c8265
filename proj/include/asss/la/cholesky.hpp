#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "asss/la/csr.hpp"

namespace asss::la {

/// Exact sparse Cholesky factor A = L L^T (optionally of P A P^T).
class CholeskyFactor {
 public:
  /// Throws NotSpdError on a non-positive pivot. `permutation`, when given,
  /// lists old indices in new order (perm[new] = old).
  static CholeskyFactor factor(const CsrMatrix& a, std::span<const std::size_t> permutation = {});

  std::size_t size() const noexcept { return lower_.nrows(); }
  const CsrMatrix& lower() const noexcept { return lower_; }
  std::span<const std::size_t> permutation() const noexcept { return perm_; }

  Vector solve(std::span<const double> b) const;
  void solve_in_place(std::span<double> x) const;

 private:
  CsrMatrix lower_;
  std::vector<std::size_t> perm_;
};

inline CholeskyFactor cholesky_factor(const CsrMatrix& a) { return CholeskyFactor::factor(a); }
inline Vector cholesky_solve(const CholeskyFactor& f, std::span<const double> b) {
  return f.solve(b);
}

/// Incomplete Cholesky with threshold dropping. An off-diagonal entry L(i,j)
/// is dropped when |L(i,j)| < droptol * ||A(i,:)||_2.
class IncompleteCholeskyFactor {
 public:
  /// Throws NotSpdError naming the row on breakdown.
  static IncompleteCholeskyFactor factor(const CsrMatrix& a, double droptol);

  /// On breakdown, retry once with A + 1e-3 * diag(A); a second breakdown throws.
  static IncompleteCholeskyFactor factor_with_fallback(const CsrMatrix& a, double droptol);

  const CsrMatrix& lower() const noexcept { return lower_; }
  double drop_tolerance() const noexcept { return droptol_; }
  bool used_diagonal_shift() const noexcept { return shifted_; }

  /// Applies (L L^T)^{-1}.
  Vector solve(std::span<const double> b) const;
  void solve_in_place(std::span<double> x) const;

 private:
  CsrMatrix lower_;
  double droptol_ = 0.0;
  bool shifted_ = false;
};

inline IncompleteCholeskyFactor ichol(const CsrMatrix& a, double droptol) {
  return IncompleteCholeskyFactor::factor(a, droptol);
}

/// Forward then backward substitution with a lower-triangular CSR factor whose
/// diagonal is the last entry of each row.
void lower_triangular_solve_in_place(const CsrMatrix& lower, std::span<double> x);

/// Reverse Cuthill-McKee ordering of a structurally symmetric matrix
/// (perm[new] = old).
std::vector<std::size_t> reverse_cuthill_mckee(const CsrMatrix& a);

}  // namespace asss::la
