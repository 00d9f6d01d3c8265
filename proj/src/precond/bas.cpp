#include "asss/precond/bas.hpp"

#include <cmath>
#include <string>

namespace asss::precond {

double bas_iteration_alpha(const blocksys::ProblemParams& p) {
  return 1.0 + p.nu() * p.omega() * p.omega();
}

double bas_preconditioner_alpha(const blocksys::ProblemParams& p) {
  return (1.0 + p.nu() * p.omega() * p.omega()) / (1.0 + p.w());
}

namespace {

void swap_halves(std::span<const double> x, std::span<double> y) {
  const std::size_t h = x.size() / 2;
  std::copy(x.begin() + static_cast<std::ptrdiff_t>(h), x.end(), y.begin());
  std::copy(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(h),
            y.begin() + static_cast<std::ptrdiff_t>(h));
}

// [[1, c], [conj(c), -1]] with c = 1 + w^2 - i w, applied blockwise.
void apply_unscaled_block(double w, std::span<const double> x, std::span<double> y) {
  const std::size_t m = x.size() / 4;
  const double cr = 1.0 + w * w;
  for (std::size_t i = 0; i < m; ++i) {
    const double yr = x[i], yi = x[m + i], qr = x[2 * m + i], qi = x[3 * m + i];
    y[i] = yr + cr * qr + w * qi;
    y[m + i] = yi + cr * qi - w * qr;
    y[2 * m + i] = cr * yr - w * yi - qr;
    y[3 * m + i] = cr * yi + w * yr - qi;
  }
}

}  // namespace

void apply_bas_block(double alpha, const blocksys::ProblemParams& p, std::span<const double> x,
                     std::span<double> y) {
  la::check_same_size(x.size(), y.size(), "apply_bas_block");
  apply_unscaled_block(p.w(), x, y);
  const double s = 1.0 / (alpha * (2.0 + p.w() * p.w()));
  for (double& v : y) v *= s;
}

void apply_bas_block_inverse(double alpha, const blocksys::ProblemParams& p,
                             std::span<const double> x, std::span<double> y) {
  la::check_same_size(x.size(), y.size(), "apply_bas_block_inverse");
  apply_unscaled_block(p.w(), x, y);
  const double s = alpha / (1.0 + p.w() * p.w());
  for (double& v : y) v *= s;
}

la::SolveResult ibas_solve(const blocksys::BOperator& op, std::span<const double> bhat,
                           const BasConfig& cfg) {
  if (!(cfg.alpha > 0.0)) throw ConfigError("ibas_solve: alpha must be positive");
  cfg.outer.validate();
  la::check_same_size(bhat.size(), op.size(), "ibas_solve");
  la::Stopwatch clock;
  const auto& p = op.params();
  const std::size_t n = op.size();
  const double a = cfg.alpha;
  const splitting::ShiftedBlockSolver first(la::scaled(op.mass(), 1.0 + a), cfg.inner.mode,
                                            cfg.inner.krylov, cfg.inner.ichol_droptol);
  const splitting::ShiftedBlockSolver second(
      la::linear_combination(a, op.mass(), p.sqrt_nu(), op.stiffness()), cfg.inner.mode,
      cfg.inner.krylov, cfg.inner.ichol_droptol);
  const double bnorm = la::norm2(bhat);

  la::SolveResult out{la::Vector(n, 0.0), {}};
  auto& rep = out.report;
  if (bnorm == 0.0) {
    rep.converged = true;
    rep.reason = la::StopReason::converged;
    rep.relative_residual_history = {0.0};
    return out;
  }
  auto& x = out.x;
  la::Vector r(n), pr(n), delta(n);
  auto residual = [&] {
    op.apply_A4(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = bhat[i] - r[i];
  };
  for (std::size_t it = 0;; ++it) {
    residual();
    const double rel = la::norm2(r) / bnorm;
    rep.relative_residual_history.push_back(rel);
    rep.iterations = it;
    if (!std::isfinite(rel)) {
      rep.reason = la::StopReason::stagnation;
      break;
    }
    if (rel <= cfg.outer.tol_relative) {
      rep.converged = true;
      rep.reason = la::StopReason::converged;
      break;
    }
    if (it >= cfg.outer.max_iterations) {
      rep.reason = la::StopReason::max_iterations;
      break;
    }
    if (cfg.outer.max_seconds > 0.0 && clock.seconds() >= cfg.outer.max_seconds) {
      rep.reason = la::StopReason::time_limit;
      break;
    }
    // (1 + a) H1 delta = P1 r with P1 = G1^{-1} in the real ordering
    blocksys::apply_G1_inverse(p, r, pr);
    rep.inner_iteration_totals += first.solve(pr, delta);
    la::axpy(1.0, delta, x);
    // (a H1 + H2) delta = J r, J swapping the state and adjoint halves
    residual();
    swap_halves(r, pr);
    rep.inner_iteration_totals += second.solve(pr, delta);
    la::axpy(1.0, delta, x);
  }
  rep.wall_time = clock.seconds();
  return out;
}

BasPreconditioner::BasPreconditioner(const blocksys::BOperator& op, double alpha,
                                     const InnerSettings& inner)
    : alpha_(alpha),
      params_(op.params()),
      solve_(la::linear_combination(alpha, op.mass(), op.params().sqrt_nu(), op.stiffness()),
             inner.mode, inner.krylov, inner.ichol_droptol) {
  if (!(alpha > 0.0)) throw ConfigError("BasPreconditioner: alpha must be positive");
}

void BasPreconditioner::apply(std::span<const double> r, std::span<double> z) const {
  la::Vector t(r.size());
  apply_bas_block_inverse(alpha_, params_, r, t);
  const double s = 1.0 / (1.0 + alpha_);
  for (double& v : t) v *= s;
  counter_.add(solve_.solve(t, z));
}

la::LinearOperator BasPreconditioner::as_operator() const {
  return [this](std::span<const double> r, std::span<double> z) { apply(r, z); };
}

la::SolveResult fgmres_real_form(const blocksys::BOperator& op, std::span<const double> bhat,
                                 const la::LinearOperator& precond, const InnerCounter& counter,
                                 const la::KrylovConfig& cfg) {
  const la::LinearOperator a = [&op](std::span<const double> x, std::span<double> y) {
    op.apply_A4(x, y);
  };
  return fgmres_counted(a, bhat, precond, counter, cfg);
}

}  // namespace asss::precond
