#pragma once

#include <span>

#include "asss/blocksys/system.hpp"
#include "asss/precond/common.hpp"

namespace asss::precond {

enum class BlockDiagVariant {
  /// T = M + sqrt(nu)(K + omega M) = (1 + sqrt(nu) omega) M + sqrt(nu) K.
  scaled_shift,
  /// T = (1 + omega) M + sqrt(nu) K.
  unscaled_shift,
};

/// Inverse of blockdiag(T, T, T, T) on the real 4x4 ordering.
class BlockDiagPreconditioner {
 public:
  BlockDiagPreconditioner(const blocksys::BOperator& op, const InnerSettings& inner = {},
                          BlockDiagVariant variant = BlockDiagVariant::scaled_shift);

  const la::CsrMatrix& block() const noexcept { return solve_.matrix(); }
  void apply(std::span<const double> r, std::span<double> z) const;
  la::LinearOperator as_operator() const;
  const InnerCounter& counter() const noexcept { return counter_; }

 private:
  splitting::ShiftedBlockSolver solve_;
  InnerCounter counter_;
};

la::CsrMatrix block_diag_matrix(const la::CsrMatrix& mass, const la::CsrMatrix& stiffness,
                                const blocksys::ProblemParams& p, BlockDiagVariant variant);

}  // namespace asss::precond
