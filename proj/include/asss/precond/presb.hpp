#pragma once

#include <optional>
#include <span>

#include "asss/blocksys/system.hpp"
#include "asss/la/cholesky.hpp"
#include "asss/precond/common.hpp"

namespace asss::precond {

struct PresbSettings {
  /// Settings of the S = (1 + w) M + sqrt(nu) K solves.
  InnerSettings s_solve;
  /// Stopping rule of the inner (E + F) and (E + F^T) Krylov solves.
  la::KrylovConfig middle{1e-4, 500, 30, 0.0};
};

/// Inverse of C = [[E + F + F^T, F^T], [F, -E]] by two solves:
/// (E + F^T) u = f - g, (E + F) r = g + E u, s = u - r.
/// The two inner systems are solved by FGMRES preconditioned with
/// blockdiag(S, S).
class PresbPreconditioner {
 public:
  PresbPreconditioner(const blocksys::BOperator& op, const PresbSettings& settings = {});

  const blocksys::PresbForms& forms() const noexcept { return forms_; }
  void apply(std::span<const double> rhs, std::span<double> out) const;
  la::LinearOperator as_operator() const;
  const InnerCounter& counter() const noexcept { return counter_; }

 private:
  void solve_s_blocks(std::span<const double> x, std::span<double> y) const;
  la::Vector solve_middle(const la::CsrMatrix& a, std::span<const double> b) const;

  blocksys::PresbForms forms_;
  la::CsrMatrix e_plus_f_;
  la::CsrMatrix e_plus_ft_;
  la::CsrMatrix s_;
  PresbSettings settings_;
  std::optional<la::CholeskyFactor> s_chol_;
  std::optional<la::IncompleteCholeskyFactor> s_ic_;
  InnerCounter counter_;
};

}  // namespace asss::precond
