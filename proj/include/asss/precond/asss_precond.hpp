#pragma once

#include <span>

#include "asss/blocksys/system.hpp"
#include "asss/la/dense.hpp"
#include "asss/precond/common.hpp"
#include "asss/splitting/asss.hpp"

namespace asss::precond {

/// Inverse of P = (1/a)(I + G)^{-1}(aI + M)G(aI + K):
/// v = -a(I + G)r, (aI + M)w = v, z = Gw, (aI + K)s = z.
class AsssPreconditioner {
 public:
  AsssPreconditioner(const blocksys::BOperator& op, double alpha, const InnerSettings& inner = {});

  double alpha() const noexcept { return alpha_; }
  void apply(std::span<const double> r, std::span<double> s) const;
  la::LinearOperator as_operator() const;
  const InnerCounter& counter() const noexcept { return counter_; }

 private:
  double alpha_;
  blocksys::GOperator g_;
  splitting::ShiftedBlockSolver msolve_;
  splitting::ShiftedBlockSolver ksolve_;
  InnerCounter counter_;
};

/// FGMRES on B x = b preconditioned by the ASSS preconditioner.
la::SolveResult fgmres_asss(const blocksys::BOperator& op, std::span<const double> b,
                            const AsssPreconditioner& p, const la::KrylovConfig& cfg);

/// Dense P and Q with B = P - Q, for small verification problems.
la::DenseMatrix dense_asss_P(const splitting::DenseSplitting& s, double alpha);
la::DenseMatrix dense_asss_Q(const splitting::DenseSplitting& s, double alpha);

}  // namespace asss::precond
