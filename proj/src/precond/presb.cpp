#include "asss/precond/presb.hpp"

#include <algorithm>
#include <string>

namespace asss::precond {

PresbPreconditioner::PresbPreconditioner(const blocksys::BOperator& op,
                                         const PresbSettings& settings)
    : forms_(blocksys::build_presb_forms(op.mass(), op.stiffness(), op.params())),
      e_plus_f_(la::linear_combination(1.0, forms_.e, 1.0, forms_.f)),
      e_plus_ft_(la::linear_combination(1.0, forms_.e, 1.0, forms_.ft)),
      s_(la::linear_combination(1.0 + op.params().w(), op.mass(), op.params().sqrt_nu(),
                                op.stiffness())),
      settings_(settings) {
  settings_.middle.validate();
  settings_.s_solve.krylov.validate();
  if (settings_.s_solve.mode == InnerMode::exact) {
    s_chol_ = la::CholeskyFactor::factor(s_);
  } else {
    s_ic_ = la::IncompleteCholeskyFactor::factor_with_fallback(s_, settings_.s_solve.ichol_droptol);
  }
}

void PresbPreconditioner::solve_s_blocks(std::span<const double> x, std::span<double> y) const {
  const std::size_t m = s_.nrows();
  for (std::size_t j = 0; j < 2; ++j) {
    const auto src = x.subspan(j * m, m);
    auto dst = y.subspan(j * m, m);
    if (s_chol_) {
      std::copy(src.begin(), src.end(), dst.begin());
      s_chol_->solve_in_place(dst);
      continue;
    }
    const la::LinearOperator pre = [this](std::span<const double> a, std::span<double> b) {
      std::copy(a.begin(), a.end(), b.begin());
      s_ic_->solve_in_place(b);
    };
    const auto res = la::cg(la::as_operator(s_), src, pre, settings_.s_solve.krylov);
    counter_.add(res.report.iterations);
    std::copy(res.x.begin(), res.x.end(), dst.begin());
  }
}

la::Vector PresbPreconditioner::solve_middle(const la::CsrMatrix& a,
                                             std::span<const double> b) const {
  const la::LinearOperator pre = [this](std::span<const double> x, std::span<double> y) {
    solve_s_blocks(x, y);
  };
  auto res = la::fgmres(la::as_operator(a), b, pre, settings_.middle);
  counter_.add(res.report.iterations);
  return std::move(res.x);
}

void PresbPreconditioner::apply(std::span<const double> rhs, std::span<double> out) const {
  const std::size_t h = forms_.half();
  la::check_same_size(rhs.size(), 2 * h, "PresbPreconditioner::apply");
  la::check_same_size(out.size(), 2 * h, "PresbPreconditioner::apply");
  const auto f = rhs.first(h), g = rhs.subspan(h);
  la::Vector t(h);
  for (std::size_t i = 0; i < h; ++i) t[i] = f[i] - g[i];
  const auto u = solve_middle(e_plus_ft_, t);
  forms_.e.multiply(u, t);
  for (std::size_t i = 0; i < h; ++i) t[i] += g[i];
  const auto r = solve_middle(e_plus_f_, t);
  for (std::size_t i = 0; i < h; ++i) {
    out[i] = r[i];
    out[h + i] = u[i] - r[i];
  }
}

la::LinearOperator PresbPreconditioner::as_operator() const {
  return [this](std::span<const double> r, std::span<double> z) { apply(r, z); };
}

}  // namespace asss::precond
