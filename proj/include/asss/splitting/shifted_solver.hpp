#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "asss/la/cholesky.hpp"
#include "asss/la/csr.hpp"
#include "asss/la/solve_report.hpp"

namespace asss::splitting {

enum class InnerMode { exact, inexact };

/// Solves A X = R for the four m-columns of a length-4m vector, where A is an
/// m x m SPD matrix such as alpha I + M or alpha I + eta K. Exact mode uses a
/// sparse Cholesky factor; inexact mode runs global CG preconditioned by
/// incomplete Cholesky.
class ShiftedBlockSolver {
 public:
  ShiftedBlockSolver(la::CsrMatrix a, InnerMode mode, const la::KrylovConfig& inner,
                     double ichol_droptol = 1e-3);

  std::size_t m() const noexcept { return a_.nrows(); }
  const la::CsrMatrix& matrix() const noexcept { return a_; }
  InnerMode mode() const noexcept { return mode_; }
  bool used_diagonal_shift() const noexcept { return ic_ && ic_->used_diagonal_shift(); }

  /// x = A^{-1} rhs columnwise; returns the inner iteration count (0 for exact).
  std::size_t solve(std::span<const double> rhs, std::span<double> x) const;

 private:
  la::CsrMatrix a_;
  InnerMode mode_;
  la::KrylovConfig inner_;
  std::optional<la::CholeskyFactor> chol_;
  std::optional<la::IncompleteCholeskyFactor> ic_;
};

}  // namespace asss::splitting
