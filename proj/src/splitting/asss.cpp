#include "asss/splitting/asss.hpp"

#include <cmath>
#include <string>

namespace asss::splitting {

using blocksys::BOperator;

void AsssConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("AsssConfig: alpha must be positive, got " + std::to_string(alpha));
  }
  outer.validate();
  inner.validate();
  if (ichol_droptol < 0.0) throw ConfigError("AsssConfig: negative drop tolerance");
}

AlphaStar alpha_star(const la::CsrMatrix& mass, AlphaMethod method,
                     const la::EigenIterationConfig& cfg, double lower_bound) {
  AlphaStar out;
  if (method == AlphaMethod::q1_closed_form) {
    const auto d = mass.diagonal();
    const double theta = d.at(0);
    for (double v : d) {
      if (std::abs(v - theta) > 1e-12 * std::abs(theta)) {
        throw ConfigError("alpha_star: closed form needs a constant diagonal");
      }
    }
    out.mu_min = theta / 4.0;
    out.mu_max = 9.0 * theta / 4.0;
    out.value = 0.75 * theta;
    return out;
  }
  const auto hi = la::power_iteration(la::as_operator(mass), mass.nrows(), cfg);
  const auto lo = la::inverse_power_iteration(mass, cfg, lower_bound);
  out.mu_min = lo.value;
  out.mu_max = hi.value;
  out.value = std::sqrt(lo.value * hi.value);
  out.converged = lo.converged && hi.converged;
  return out;
}

namespace {

double endpoint_factor(double alpha, double mu) {
  return std::hypot(alpha, mu) / (alpha + mu);
}

}  // namespace

double zeta(double alpha, double mu_min, double mu_max) {
  return std::max(endpoint_factor(alpha, mu_min), endpoint_factor(alpha, mu_max));
}

double gamma_bound(double alpha, double mu_min, double mu_max, double lambda_min,
                   double lambda_max) {
  return zeta(alpha, mu_min, mu_max) * zeta(alpha, lambda_min, lambda_max);
}

namespace {

la::Vector residual(const BOperator& op, std::span<const double> b, std::span<const double> x) {
  auto r = op.apply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return r;
}

double g1_norm(const BOperator& op, std::span<const double> r) {
  la::Vector t(r.size());
  blocksys::apply_G1(op.params(), r, t);
  return la::norm2(t);
}

// Records the residual and decides whether to stop. Returns true to stop.
bool monitor(la::SolveReport& rep, double relres, std::size_t it, const la::KrylovConfig& cfg,
             const la::Stopwatch& clock) {
  rep.relative_residual_history.push_back(relres);
  rep.iterations = it;
  if (relres <= cfg.tol_relative) {
    rep.converged = true;
    rep.reason = la::StopReason::converged;
    return true;
  }
  if (it >= cfg.max_iterations) {
    rep.reason = la::StopReason::max_iterations;
    return true;
  }
  if (cfg.max_seconds > 0.0 && clock.seconds() >= cfg.max_seconds) {
    rep.reason = la::StopReason::time_limit;
    return true;
  }
  return false;
}

}  // namespace

la::SolveResult asss_solve(const BOperator& op, std::span<const double> b, const AsssConfig& cfg) {
  cfg.validate();
  la::check_same_size(b.size(), op.size(), "asss_solve");
  la::Stopwatch clock;
  const std::size_t n = op.size();
  const double a = cfg.alpha;
  const ShiftedBlockSolver msolve(la::shifted(op.mass(), a), InnerMode::exact, cfg.inner);
  const ShiftedBlockSolver ksolve(la::shifted(op.scaled_stiffness(), a), InnerMode::exact,
                                  cfg.inner);
  const auto& g = op.g();
  const auto gb = g.apply(b);
  const double bnorm = g1_norm(op, b);

  la::SolveResult out{la::Vector(n, 0.0), {}};
  if (bnorm == 0.0) {
    out.report.converged = true;
    out.report.reason = la::StopReason::converged;
    out.report.relative_residual_history = {0.0};
    return out;
  }
  auto& x = out.x;
  la::Vector half(n), rhs(n), t(n), u(n);
  for (std::size_t it = 0;; ++it) {
    if (monitor(out.report, g1_norm(op, residual(op, b, x)) / bnorm, it, cfg.outer, clock)) break;
    // (aI + M) x_half = (aI - G K) x + b
    op.apply_stiffness_blocks(x, t);
    g.apply(t, u);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = a * x[i] - u[i] + b[i];
    msolve.solve(rhs, half);
    // (aI + K) x = (aI + G M) x_half - G b
    op.apply_mass_blocks(half, t);
    g.apply(t, u);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = a * half[i] + u[i] - gb[i];
    ksolve.solve(rhs, x);
  }
  out.report.wall_time = clock.seconds();
  return out;
}

la::Vector asss_sweep(const BOperator& op, std::span<const double> x, std::span<const double> b,
                      double alpha) {
  const std::size_t n = op.size();
  la::check_same_size(x.size(), n, "asss_sweep");
  la::check_same_size(b.size(), n, "asss_sweep");
  const la::KrylovConfig unused;
  const ShiftedBlockSolver msolve(la::shifted(op.mass(), alpha), InnerMode::exact, unused);
  const ShiftedBlockSolver ksolve(la::shifted(op.scaled_stiffness(), alpha), InnerMode::exact,
                                  unused);
  la::Vector t(n), u(n), rhs(n), half(n), out(n);
  op.apply_stiffness_blocks(x, t);
  op.g().apply(t, u);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = alpha * x[i] - u[i] + b[i];
  msolve.solve(rhs, half);
  const auto gb = op.g().apply(b);
  op.apply_mass_blocks(half, t);
  op.g().apply(t, u);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = alpha * half[i] + u[i] - gb[i];
  ksolve.solve(rhs, out);
  return out;
}

la::SolveResult iasss_solve(const BOperator& op, std::span<const double> b, const AsssConfig& cfg) {
  cfg.validate();
  la::check_same_size(b.size(), op.size(), "iasss_solve");
  la::Stopwatch clock;
  const std::size_t n = op.size();
  const double a = cfg.alpha;
  const ShiftedBlockSolver msolve(la::shifted(op.mass(), a), cfg.mode, cfg.inner,
                                  cfg.ichol_droptol);
  const ShiftedBlockSolver ksolve(la::shifted(op.scaled_stiffness(), a), cfg.mode, cfg.inner,
                                  cfg.ichol_droptol);
  const double bnorm = g1_norm(op, b);

  la::SolveResult out{la::Vector(n, 0.0), {}};
  if (bnorm == 0.0) {
    out.report.converged = true;
    out.report.reason = la::StopReason::converged;
    out.report.relative_residual_history = {0.0};
    return out;
  }
  auto& x = out.x;
  la::Vector delta(n), gr(n);
  for (std::size_t it = 0;; ++it) {
    auto r = residual(op, b, x);
    if (monitor(out.report, g1_norm(op, r) / bnorm, it, cfg.outer, clock)) break;
    try {
      out.report.inner_iteration_totals += msolve.solve(r, delta);
    } catch (const Error& e) {
      throw Error("iasss: first half-step inner solve failed at outer iteration " +
                  std::to_string(it) + ": " + e.what());
    }
    la::axpy(1.0, delta, x);
    r = residual(op, b, x);
    op.g().apply(r, gr);
    for (double& v : gr) v = -v;
    try {
      out.report.inner_iteration_totals += ksolve.solve(gr, delta);
    } catch (const Error& e) {
      throw Error("iasss: second half-step inner solve failed at outer iteration " +
                  std::to_string(it) + ": " + e.what());
    }
    la::axpy(1.0, delta, x);
  }
  out.report.wall_time = clock.seconds();
  return out;
}

DenseSplitting dense_splitting(const BOperator& op, std::size_t max_dim) {
  if (op.size() > max_dim) {
    throw ConfigError("dense_splitting: dimension " + std::to_string(op.size()) +
                      " exceeds the dense limit " + std::to_string(max_dim));
  }
  const std::size_t m = op.m();
  const blocksys::BlockEntry mb[] = {{0, 0, 1.0, &op.mass()},
                                     {1, 1, 1.0, &op.mass()},
                                     {2, 2, 1.0, &op.mass()},
                                     {3, 3, 1.0, &op.mass()}};
  const auto* kk = &op.scaled_stiffness();
  const blocksys::BlockEntry kb[] = {{0, 0, 1.0, kk}, {1, 1, 1.0, kk}, {2, 2, 1.0, kk}, {3, 3, 1.0, kk}};
  DenseSplitting s;
  s.mbar = la::DenseMatrix::from_csr(blocksys::assemble_blocks(4, m, mb));
  s.kbar = la::DenseMatrix::from_csr(blocksys::assemble_blocks(4, m, kb));
  s.g = la::DenseMatrix::from_csr(blocksys::assemble_G(m, op.params()));
  s.b = s.mbar + s.g * s.kbar;
  return s;
}

la::DenseMatrix iteration_matrix_dense(const DenseSplitting& s, double alpha) {
  const auto n = s.mbar.rows();
  const auto ai = alpha * la::DenseMatrix::identity(n);
  return la::inverse(ai + s.kbar) * (ai + s.g * s.mbar) * la::inverse(ai + s.mbar) *
         (ai - s.g * s.kbar);
}

la::DenseMatrix iteration_matrix_dense(const BOperator& op, double alpha) {
  return iteration_matrix_dense(dense_splitting(op), alpha);
}

la::DenseMatrix similar_iteration_matrix_dense(const DenseSplitting& s, double alpha) {
  const auto n = s.mbar.rows();
  const auto ai = alpha * la::DenseMatrix::identity(n);
  const auto r = (ai + s.g * s.mbar) * la::inverse(ai + s.mbar);
  const auto sm = (ai - s.g * s.kbar) * la::inverse(ai + s.kbar);
  return r * sm;
}

double fitted_contraction(std::span<const double> history, std::size_t window) {
  if (window < 2 || history.size() < window) {
    throw ConfigError("fitted_contraction: history shorter than the fit window");
  }
  const auto tail = history.last(window);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < window; ++i) {
    const double xi = double(i), yi = std::log(tail[i]);
    sx += xi;
    sy += yi;
    sxx += xi * xi;
    sxy += xi * yi;
  }
  const double w = double(window);
  const double slope = (w * sxy - sx * sy) / (w * sxx - sx * sx);
  return std::exp(slope);
}

}  // namespace asss::splitting
