#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "asss/blocksys/system.hpp"
#include "asss/fem/q1.hpp"
#include "asss/la/dense.hpp"
#include "asss/la/eigen.hpp"
#include "asss/splitting/asss.hpp"
#include "test_helpers.hpp"

using namespace asss;
using namespace asss::la;
using namespace asss::blocksys;
using namespace asss::splitting;

namespace {

double rho(const DenseMatrix& t) { return spectral_radius(dense_eig_general(t)); }

AsssConfig exact_config(double alpha) {
  AsssConfig cfg;
  cfg.alpha = alpha;
  cfg.mode = InnerMode::exact;
  return cfg;
}

double gamma_for(const fem::GridConfig& g, const ProblemParams& p, double alpha) {
  const auto me = fem::mass_extreme_eigenvalues(g);
  const auto ke = fem::stiffness_extreme_eigenvalues(g);
  return gamma_bound(alpha, me.lo, me.hi, p.eta() * ke.lo, p.eta() * ke.hi);
}

bool within_count_tolerance(std::size_t got, double want) {
  return std::abs(double(got) - want) <= std::max(0.2 * want, 5.0);
}

}  // namespace

TEST_CASE("config validation") {
  AsssConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.alpha = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.alpha = 1e-3;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("alpha_star: closed form reproduces the tabulated mesh values") {
  const struct {
    int k;
    double theta, mu_min, mu_max, alpha;
  } rows[] = {{4, 1.7361e-3, 4.3403e-4, 3.9063e-3, 1.3021e-3},
              {5, 4.3403e-4, 1.0851e-4, 9.7656e-4, 3.2552e-4},
              {6, 1.0851e-4, 2.7127e-5, 2.4414e-4, 8.1380e-5},
              {7, 2.7127e-5, 6.7817e-6, 6.1035e-5, 2.0345e-5}};
  for (const auto& r : rows) {
    const auto m = fem::assemble_mass(fem::GridConfig(r.k));
    const auto a = alpha_star(m, AlphaMethod::q1_closed_form);
    CHECK(a.value == doctest::Approx(r.alpha).epsilon(5e-5));
    CHECK(a.mu_min == doctest::Approx(r.mu_min).epsilon(5e-5));
    CHECK(a.mu_max == doctest::Approx(r.mu_max).epsilon(5e-5));
    CHECK(a.value == doctest::Approx(0.75 * m.diagonal()[0]).epsilon(1e-10));
  }
}

TEST_CASE("alpha_star: eigenvalue estimates") {
  const auto eye = CsrMatrix::identity(10);
  const auto a = alpha_star(eye, AlphaMethod::eigen_estimate);
  CHECK(a.value == doctest::Approx(1.0).epsilon(1e-12));
  const std::vector<double> d{1.0, 4.0, 2.0};
  CHECK(alpha_star(CsrMatrix::diagonal(d), AlphaMethod::eigen_estimate).value ==
        doctest::Approx(2.0).epsilon(1e-8));
  CHECK_THROWS_AS(alpha_star(CsrMatrix::diagonal(d), AlphaMethod::q1_closed_form), ConfigError);
  // On the Q1 mass matrix the estimates converge to the true discrete extremes.
  const fem::GridConfig g(4);
  EigenIterationConfig cfg;
  cfg.tol_relative = 1e-13;
  const auto est = alpha_star(fem::assemble_mass(g), AlphaMethod::eigen_estimate, cfg);
  const auto ext = fem::mass_extreme_eigenvalues(g);
  CHECK(est.converged);
  CHECK(est.value == doctest::Approx(std::sqrt(ext.lo * ext.hi)).epsilon(1e-8));
}

TEST_CASE("zeta: analytic values and the strict bound") {
  CHECK(zeta(2.0, 2.0, 2.0) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
  const double theta = 1.0;
  const double z = zeta(0.75 * theta, theta / 4.0, 9.0 * theta / 4.0);
  CHECK(z == doctest::Approx(std::sqrt(10.0) / 4.0).epsilon(1e-15));
  CHECK(std::hypot(0.75, 0.25) / 1.0 == doctest::Approx(std::hypot(0.75, 2.25) / 3.0));
  std::mt19937 gen(1);
  std::uniform_real_distribution<double> e(-8.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = std::pow(10.0, e(gen)), m1 = std::pow(10.0, e(gen)),
                 m2 = std::pow(10.0, e(gen));
    CHECK(zeta(a, std::min(m1, m2), std::max(m1, m2)) < 1.0);
  }
}

TEST_CASE("zeta: the full mass spectrum never exceeds the endpoint value") {
  const fem::GridConfig g(4);
  const auto spectrum = dense_eig_symmetric(DenseMatrix::from_csr(fem::assemble_mass(g)));
  const auto b = fem::mass_spectrum_bounds(g);
  const double bound = zeta(b.alpha_star, b.mu_min, b.mu_max);
  for (double mu : spectrum) CHECK(std::hypot(b.alpha_star, mu) / (b.alpha_star + mu) <= bound);
}

TEST_CASE("zeta: alpha* minimizes the endpoint bound") {
  for (int k = 4; k <= 7; ++k) {
    const auto b = fem::mass_spectrum_bounds(fem::GridConfig(k));
    const double best = zeta(b.alpha_star, b.mu_min, b.mu_max);
    for (double f : {0.25, 0.5, 2.0, 4.0}) CHECK(best <= zeta(f * b.alpha_star, b.mu_min, b.mu_max));
  }
}

TEST_CASE("gamma: below zeta, degenerate semidefinite endpoint") {
  std::mt19937 gen(2);
  std::uniform_real_distribution<double> e(-6.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double a = std::pow(10.0, e(gen));
    CHECK(gamma_bound(a, 0.1, 2.0, 1e-3, 5.0) <= zeta(a, 0.1, 2.0));
  }
  CHECK(gamma_bound(0.3, 0.1, 2.0, 0.0, 5.0) == doctest::Approx(zeta(0.3, 0.1, 2.0)));
}

TEST_CASE("exact ASSS: stationarity at the dense solution") {
  const auto fem = fem::FemSystem::build(3);
  const ProblemParams p(1e-2, 1.0);
  const BOperator op(fem, p);
  const auto b = build_rhs(fem.yhat_d, p);
  const auto x = dense_solve(dense_splitting(op).b, b);
  const auto x1 = asss_sweep(op, x, b, 1e-3);
  CHECK(max_abs_diff(x1, x) <= 1e-10 * max_abs_diff(x, Vector(x.size(), 0.0)));
}

TEST_CASE("exact ASSS at h = 1/16: geometric rate within the bound") {
  const auto fem = fem::FemSystem::build(4);
  const ProblemParams p(1e-2, 1.0);
  const BOperator op(fem, p);
  const auto b = build_rhs(fem.yhat_d, p);
  const double alpha = fem::mass_spectrum_bounds(fem.grid).alpha_star;
  const auto res = asss_solve(op, b, exact_config(alpha));
  CHECK(res.report.converged);
  CHECK(residual_main(op, res.x, b) <= 1e-6 * norm2(fem.yhat_d));
  const double rate = fitted_contraction(res.report.relative_residual_history);
  CHECK(rate <= gamma_for(fem.grid, p, alpha) + 0.02);
}

TEST_CASE("exact ASSS converges for widely different alpha") {
  const auto fem = fem::FemSystem::build(4);
  const ProblemParams p(1e-2, 1.0);
  const BOperator op(fem, p);
  const auto b = build_rhs(fem.yhat_d, p);
  for (double alpha : {1e-6, 1e-3, 1.0}) {
    auto cfg = exact_config(alpha);
    cfg.outer.max_iterations = 100000;
    const auto res = asss_solve(op, b, cfg);
    CHECK(res.report.converged);
    MESSAGE("alpha=" << alpha << " iterations=" << res.report.iterations);
  }
}

TEST_CASE("exact ASSS converges within 500 iterations around alpha*") {
  const auto fem = fem::FemSystem::build(4);
  const double astar = fem::mass_spectrum_bounds(fem.grid).alpha_star;
  for (double nu : {1e-2, 1e-4, 1e-6, 1e-8})
    for (double omega : {1e-4, 1e-2, 1.0, 1e2, 1e4}) {
      const ProblemParams p(nu, omega);
      const BOperator op(fem, p);
      const auto b = build_rhs(fem.yhat_d, p);
      for (double f : {0.1, 1.0, 10.0}) {
        const auto res = asss_solve(op, b, exact_config(f * astar));
        CHECK(res.report.converged);
      }
    }
}

TEST_CASE("IASSS with a tight inner tolerance reproduces exact ASSS") {
  const auto fem = fem::FemSystem::build(4);
  const ProblemParams p(1e-4, 10.0);
  const BOperator op(fem, p);
  const auto b = build_rhs(fem.yhat_d, p);
  const double alpha = fem::mass_spectrum_bounds(fem.grid).alpha_star;
  const auto exact = asss_solve(op, b, exact_config(alpha));
  auto cfg = exact_config(alpha);
  cfg.mode = InnerMode::inexact;
  cfg.inner.tol_relative = 1e-14;
  const auto inexact = iasss_solve(op, b, cfg);
  CHECK(exact.report.iterations == inexact.report.iterations);
  const auto& h1 = exact.report.relative_residual_history;
  const auto& h2 = inexact.report.relative_residual_history;
  REQUIRE(h1.size() == h2.size());
  for (std::size_t k = 0; k < h1.size(); ++k) CHECK(std::abs(h1[k] - h2[k]) <= 1e-8);
  CHECK(norm2(subtract(exact.x, inexact.x)) <= 1e-8 * norm2(exact.x));
  CHECK(inexact.report.inner_iteration_totals > 0);
}

TEST_CASE("IASSS at h = 1/32 matches the reference iteration counts") {
  const auto fem = fem::FemSystem::build(5);
  const double alpha = fem::mass_spectrum_bounds(fem.grid).alpha_star;
  const struct {
    double nu, omega, want;
  } cells[] = {{1e-2, 1e-4, 54}, {1e-8, 1e4, 52}};
  for (const auto& c : cells) {
    const ProblemParams p(c.nu, c.omega);
    const BOperator op(fem, p);
    auto cfg = exact_config(alpha);
    cfg.mode = InnerMode::inexact;
    const auto res = iasss_solve(op, build_rhs(fem.yhat_d, p), cfg);
    CHECK(res.report.converged);
    CHECK(within_count_tolerance(res.report.iterations, c.want));
    MESSAGE("nu=" << c.nu << " omega=" << c.omega << " iterations=" << res.report.iterations);
  }
}

TEST_CASE("IASSS reports non-convergence and honors a zero right-hand side") {
  const auto fem = fem::FemSystem::build(3);
  const ProblemParams p(1e-2, 1.0);
  const BOperator op(fem, p);
  auto cfg = exact_config(1e-3);
  cfg.mode = InnerMode::inexact;
  cfg.outer.max_iterations = 3;
  const auto res = iasss_solve(op, build_rhs(fem.yhat_d, p), cfg);
  CHECK_FALSE(res.report.converged);
  CHECK(res.report.reason == StopReason::max_iterations);
  CHECK(res.report.relative_residual_history.size() == 4);
  CHECK(res.report.relative_residual_history.front() == 1.0);
  const auto zero = iasss_solve(op, Vector(op.size(), 0.0), cfg);
  CHECK(zero.report.converged);
  CHECK(norm2(zero.x) == 0.0);
}

TEST_CASE("dense iteration matrix: rho < 1, rho <= gamma, similar form") {
  const auto fem = fem::FemSystem::build(3);
  const double astar = fem::mass_spectrum_bounds(fem.grid).alpha_star;
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> lnu(-8.0, -2.0), lom(-4.0, 4.0), la(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const ProblemParams p(std::pow(10.0, lnu(gen)), std::pow(10.0, lom(gen)));
    const double alpha = astar * std::pow(10.0, la(gen));
    const BOperator op(fem, p);
    const auto s = dense_splitting(op);
    const double r = rho(iteration_matrix_dense(s, alpha));
    CHECK(r < 1.0);
    CHECK(r <= gamma_for(fem.grid, p, alpha) + 1e-10);
  }
  const ProblemParams p(1e-2, 1.0);
  const auto s = dense_splitting(BOperator(fem, p));
  const auto e1 = dense_eig_general(iteration_matrix_dense(s, astar));
  const auto e2 = dense_eig_general(similar_iteration_matrix_dense(s, astar));
  auto key = [](const std::complex<double>& a, const std::complex<double>& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  };
  auto a = e1, b = e2;
  std::sort(a.begin(), a.end(), key);
  std::sort(b.begin(), b.end(), key);
  // Greedy nearest matching guards against ties in the sort order.
  std::vector<char> used(b.size(), 0);
  for (const auto& z : a) {
    double best = 1e300;
    std::size_t idx = 0;
    for (std::size_t k = 0; k < b.size(); ++k)
      if (!used[k] && std::abs(z - b[k]) < best) best = std::abs(z - b[k]), idx = k;
    used[idx] = 1;
    CHECK(best <= 1e-8);
  }
}

TEST_CASE("dense size guard") {
  const auto fem = fem::FemSystem::build(5);
  CHECK_THROWS_AS(dense_splitting(BOperator(fem, ProblemParams(1e-2, 1.0))), ConfigError);
}

TEST_CASE("fitted contraction of a geometric sequence") {
  std::vector<double> h;
  for (int i = 0; i < 30; ++i) h.push_back(std::pow(0.7, i));
  CHECK(fitted_contraction(h) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK_THROWS_AS(fitted_contraction(std::vector<double>{1.0, 0.5}), ConfigError);
}
