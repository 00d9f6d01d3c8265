#include <doctest.h>

#include <cmath>
#include <random>

#include "asss/fem/q1.hpp"
#include "asss/la/cholesky.hpp"
#include "asss/la/dense.hpp"
#include "asss/la/eigen.hpp"
#include "asss/la/krylov.hpp"
#include "test_helpers.hpp"

using namespace asss;
using namespace asss::la;
using namespace asss::fem;
using asss::testing::random_vector;

namespace {

// Global bilinear hat function of interior node p and its gradient.
struct Hat {
  double value, dx, dy;
};

Hat hat(const GridConfig& g, std::size_t p, double x, double y) {
  const double h = g.h();
  const double sx = (x - g.x(p)) / h, sy = (y - g.y(p)) / h;
  if (std::abs(sx) >= 1.0 || std::abs(sy) >= 1.0) return {0.0, 0.0, 0.0};
  const double fx = 1.0 - std::abs(sx), fy = 1.0 - std::abs(sy);
  const double gx = (sx > 0 ? -1.0 : 1.0) / h, gy = (sy > 0 ? -1.0 : 1.0) / h;
  return {fx * fy, gx * fy, fx * gy};
}

// Brute-force assembly: 2x2 Gauss quadrature on every cell, evaluating the
// global basis functions directly instead of element matrices.
std::pair<DenseMatrix, DenseMatrix> quadrature_oracle(const GridConfig& g) {
  const std::size_t m = g.m();
  DenseMatrix mass(m, m), stiff(m, m);
  const double gp[2] = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};
  const std::size_t cells = g.n_side() + 1;
  const double h = g.h();
  std::vector<Hat> vals(m);
  for (std::size_t cj = 0; cj < cells; ++cj)
    for (std::size_t ci = 0; ci < cells; ++ci)
      for (double qx : gp)
        for (double qy : gp) {
          const double x = (ci + qx) * h, y = (cj + qy) * h, w = h * h / 4.0;
          for (std::size_t p = 0; p < m; ++p) vals[p] = hat(g, p, x, y);
          for (std::size_t p = 0; p < m; ++p) {
            if (vals[p].value == 0.0) continue;
            for (std::size_t q = 0; q < m; ++q) {
              if (vals[q].value == 0.0) continue;
              mass(p, q) += w * vals[p].value * vals[q].value;
              stiff(p, q) += w * (vals[p].dx * vals[q].dx + vals[p].dy * vals[q].dy);
            }
          }
        }
  return {mass, stiff};
}

KrylovConfig config(double tol, std::size_t maxit) {
  KrylovConfig cfg;
  cfg.tol_relative = tol;
  cfg.max_iterations = maxit;
  return cfg;
}

}  // namespace

TEST_CASE("grid: sizes and validation") {
  const GridConfig g(4);
  CHECK(g.h() == 1.0 / 16.0);
  CHECK(g.n_side() == 15);
  CHECK(g.m() == 225);
  CHECK(g.index(1, 1) == 0);
  CHECK(g.index(2, 1) == 1);
  CHECK(g.index(1, 2) == 15);
  CHECK(g.x(1) == 2.0 / 16.0);
  CHECK(g.y(15) == 2.0 / 16.0);
  CHECK_THROWS_AS(GridConfig(1), ConfigError);
}

TEST_CASE("mass: constant diagonal 4h^2/9 and refinement by exact quarters") {
  double previous = 0.0;
  for (int k = 3; k <= 7; ++k) {
    const GridConfig g(k);
    const auto m = assemble_mass(g);
    const double theta = mass_spectrum_bounds(g).theta;
    CHECK(theta == doctest::Approx(4.0 / 9.0 * g.h() * g.h()).epsilon(1e-15));
    for (double d : m.diagonal()) CHECK(std::abs(d - theta) <= 1e-15 * theta);
    if (k > 3) CHECK(theta == previous / 4.0);
    previous = theta;
  }
  CHECK(mass_spectrum_bounds(GridConfig(4)).theta == doctest::Approx(1.7361e-3).epsilon(5e-5));
}

TEST_CASE("mass and stiffness: symmetric, SPD, at most 9 nonzeros per row") {
  for (int k = 2; k <= 5; ++k) {
    const GridConfig g(k);
    const auto m = assemble_mass(g);
    const auto kk = assemble_stiffness(g);
    CHECK(m.is_symmetric());
    CHECK(kk.is_symmetric());
    CHECK_NOTHROW(cholesky_factor(m));
    CHECK_NOTHROW(cholesky_factor(kk));
    for (std::size_t i = 0; i < g.m(); ++i) {
      CHECK(m.row_cols(i).size() <= 9);
      CHECK(kk.row_cols(i).size() <= 9);
    }
  }
}

TEST_CASE("mass and stiffness match the brute-force quadrature oracle at h = 1/8") {
  const GridConfig g(3);
  const auto [mass, stiff] = quadrature_oracle(g);
  CHECK(max_abs_diff(DenseMatrix::from_csr(assemble_mass(g)), mass) <= 1e-13);
  CHECK(max_abs_diff(DenseMatrix::from_csr(assemble_stiffness(g)), stiff) <= 1e-13);
}

TEST_CASE("stiffness: diagonal 8/3 and constants in the kernel away from the boundary") {
  const GridConfig g(5);
  const auto kk = assemble_stiffness(g);
  for (double d : kk.diagonal()) CHECK(d == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  const auto r = spmv(kk, Vector(g.m(), 1.0));
  for (std::size_t j = 2; j + 1 < g.n_side(); ++j)
    for (std::size_t i = 2; i + 1 < g.n_side(); ++i) CHECK(std::abs(r[g.index(i, j)]) <= 1e-14);
}

TEST_CASE("mass: scaled spectrum lies strictly inside (1/4, 9/4) with analytic extremes") {
  const GridConfig g(3);
  const auto m = DenseMatrix::from_csr(assemble_mass(g));
  const auto bounds = mass_spectrum_bounds(g);
  auto n = m;
  n *= 1.0 / bounds.theta;
  const auto spectrum = dense_eig_symmetric(n);
  CHECK(spectrum.front() > 0.25);
  CHECK(spectrum.back() < 2.25);
  const auto ext = mass_extreme_eigenvalues(g);
  CHECK(std::abs(spectrum.front() - ext.lo / bounds.theta) <= 1e-10);
  CHECK(std::abs(spectrum.back() - ext.hi / bounds.theta) <= 1e-10);
}

TEST_CASE("mass: power and inverse power converge to the analytic extremes at h = 1/16") {
  const GridConfig g(4);
  const auto m = assemble_mass(g);
  EigenIterationConfig cfg;
  cfg.tol_relative = 1e-13;
  const auto hi = power_iteration(as_operator(m), g.m(), cfg);
  const auto lo = inverse_power_iteration(m, cfg);
  const auto ext = mass_extreme_eigenvalues(g);
  CHECK(hi.value == doctest::Approx(ext.hi).epsilon(1e-8));
  CHECK(lo.value == doctest::Approx(ext.lo).epsilon(1e-8));
  const auto b = mass_spectrum_bounds(g);
  CHECK(lo.value > b.mu_min);
  CHECK(hi.value < b.mu_max);
}

TEST_CASE("stiffness: analytic extremes agree with the dense spectrum") {
  for (int k : {2, 3}) {
    const GridConfig g(k);
    const auto spectrum = dense_eig_symmetric(DenseMatrix::from_csr(assemble_stiffness(g)));
    const auto ext = stiffness_extreme_eigenvalues(g);
    CHECK(std::abs(spectrum.front() - ext.lo) <= 1e-10 * ext.hi);
    CHECK(std::abs(spectrum.back() - ext.hi) <= 1e-10 * ext.hi);
  }
}

TEST_CASE("target interpolation") {
  CHECK(target_state(0.25, 0.25) == 0.0625);
  CHECK(target_state(0.75, 0.75) == 0.0);
  CHECK(target_state(0.5, 0.25) == 0.0);
  CHECK(target_state(0.25, 0.5) == 0.0);
  const GridConfig g(2);
  const auto v = interpolate_target(g);
  REQUIRE(v.size() == 9);
  CHECK(v[g.index(1, 1)] == 0.0625);
  for (std::size_t p = 1; p < 9; ++p) CHECK(v[p] == 0.0);
}

TEST_CASE("rhs_hat: zero, unit vectors, dense oracle") {
  const GridConfig g(4);
  const auto m = assemble_mass(g);
  CHECK(norm2(rhs_hat(m, Vector(g.m(), 0.0))) == 0.0);
  Vector e(g.m(), 0.0);
  e[37] = 1.0;
  const auto col = rhs_hat(m, e);
  for (std::size_t i = 0; i < g.m(); ++i) CHECK(col[i] == m.at(i, 37));
  const auto sys = FemSystem::build(g);
  const auto oracle = DenseMatrix::from_csr(m).multiply(sys.ybar_d);
  CHECK(max_abs_diff(sys.yhat_d, oracle) <= 1e-13);
  CHECK_THROWS_AS(rhs_hat(m, Vector(3, 1.0)), DimensionError);
}

TEST_CASE("ichol(0.001) on the mass matrix at least halves the CG iteration count") {
  const GridConfig g(4);
  const auto m = assemble_mass(g);
  std::mt19937 gen(3);
  const auto b = random_vector(g.m(), gen);
  const auto plain = cg(as_operator(m), b, {}, config(1e-6, 1000));
  const auto ic = ichol(m, 1e-3);
  const LinearOperator pre = [&ic](std::span<const double> x, std::span<double> y) {
    std::copy(x.begin(), x.end(), y.begin());
    ic.solve_in_place(y);
  };
  const auto pcg = cg(as_operator(m), b, pre, config(1e-6, 1000));
  CHECK(plain.report.converged);
  CHECK(pcg.report.converged);
  CHECK(2 * pcg.report.iterations <= plain.report.iterations);
}

TEST_CASE("cg and global_cg on the shifted mass matrix agree with Cholesky") {
  {
    const GridConfig g(5);
    const auto m = assemble_mass(g);
    const double alpha = mass_spectrum_bounds(g).alpha_star;
    const auto a = shifted(m, alpha);
    std::mt19937 gen(5);
    const auto b = random_vector(g.m(), gen);
    const auto x = cg(as_operator(a), b, {}, config(1e-12, 1000)).x;
    const auto oracle = cholesky_solve(cholesky_factor(a), b);
    CHECK(norm2(subtract(x, oracle)) <= 1e-8 * norm2(oracle));
  }
  {
    const GridConfig g(4);
    const auto m = assemble_mass(g);
    const auto a = shifted(m, mass_spectrum_bounds(g).alpha_star);
    std::mt19937 gen(6);
    MultiVector b(g.m(), 4);
    for (std::size_t j = 0; j < 4; ++j) {
      const auto c = random_vector(g.m(), gen);
      std::copy(c.begin(), c.end(), b.col(j).begin());
    }
    const auto res = global_cg(columnwise(as_operator(a)), b, {}, config(1e-11, 1000));
    const auto f = cholesky_factor(a);
    for (std::size_t j = 0; j < 4; ++j) {
      const auto oracle = cholesky_solve(f, b.col(j));
      CHECK(norm2(subtract(res.x.col(j), oracle)) <= 1e-7 * norm2(oracle));
    }
  }
}
