#pragma once

#include <span>

#include "asss/blocksys/system.hpp"
#include "asss/precond/common.hpp"

namespace asss::precond {

/// Complex vectors (y; q) are carried in the 4x4 real ordering
/// (Re y, Im y, Re q, Im q).

/// Recommended iteration parameter 1 + nu omega^2.
double bas_iteration_alpha(const blocksys::ProblemParams& p);
/// Recommended preconditioner parameter (1 + nu omega^2) / (1 + sqrt(nu) omega).
double bas_preconditioner_alpha(const blocksys::ProblemParams& p);

struct BasConfig {
  double alpha = 0.0;
  la::KrylovConfig outer{1e-6, 500, 30, 0.0};
  InnerSettings inner;
};

/// Alternating block splitting iteration with V = H1 on A4 x = bhat, zero
/// initial guess, residual-correction form. Each iteration solves with
/// (1 + alpha) M and alpha M + sqrt(nu) K on four columns.
la::SolveResult ibas_solve(const blocksys::BOperator& op, std::span<const double> bhat,
                           const BasConfig& cfg);

/// The 2x2 scalar block P(alpha) = [[1, c], [conj(c), -1]] / (alpha (2 + w^2)),
/// c = 1 + w^2 - i w, w = omega sqrt(nu), and its analytic inverse.
void apply_bas_block(double alpha, const blocksys::ProblemParams& p, std::span<const double> x,
                     std::span<double> y);
void apply_bas_block_inverse(double alpha, const blocksys::ProblemParams& p,
                             std::span<const double> x, std::span<double> y);

/// Inverse of (1 + alpha) P(alpha) blockdiag(alpha M + sqrt(nu) K).
class BasPreconditioner {
 public:
  BasPreconditioner(const blocksys::BOperator& op, double alpha, const InnerSettings& inner = {});

  double alpha() const noexcept { return alpha_; }
  void apply(std::span<const double> r, std::span<double> z) const;
  la::LinearOperator as_operator() const;
  const InnerCounter& counter() const noexcept { return counter_; }

 private:
  double alpha_;
  blocksys::ProblemParams params_;
  splitting::ShiftedBlockSolver solve_;
  InnerCounter counter_;
};

/// FGMRES on the 4x4 real system A4 x = bhat with any preconditioner.
la::SolveResult fgmres_real_form(const blocksys::BOperator& op, std::span<const double> bhat,
                                 const la::LinearOperator& precond, const InnerCounter& counter,
                                 const la::KrylovConfig& cfg);

}  // namespace asss::precond
