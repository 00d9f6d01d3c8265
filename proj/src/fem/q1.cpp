#include "asss/fem/q1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace asss::fem {

GridConfig::GridConfig(int k) : k_(k) {
  if (k < 2 || k > 12) {
    throw ConfigError("GridConfig: k must lie in [2, 12], got " + std::to_string(k));
  }
  n_side_ = (std::size_t{1} << k) - 1;
  h_ = std::ldexp(1.0, -k);
}

ElementMatrix element_mass(double h) {
  const double s = h * h / 36.0;
  return {{{4 * s, 2 * s, 1 * s, 2 * s},
           {2 * s, 4 * s, 2 * s, 1 * s},
           {1 * s, 2 * s, 4 * s, 2 * s},
           {2 * s, 1 * s, 2 * s, 4 * s}}};
}

ElementMatrix element_stiffness() {
  const double s = 1.0 / 6.0;
  return {{{4 * s, -1 * s, -2 * s, -1 * s},
           {-1 * s, 4 * s, -1 * s, -2 * s},
           {-2 * s, -1 * s, 4 * s, -1 * s},
           {-1 * s, -2 * s, -1 * s, 4 * s}}};
}

namespace {

la::CsrMatrix assemble(const GridConfig& grid, const ElementMatrix& local) {
  const std::size_t cells = grid.n_side() + 1;
  const std::size_t n = grid.n_side();
  std::vector<la::Triplet> entries;
  entries.reserve(cells * cells * 16);
  for (std::size_t cj = 0; cj < cells; ++cj) {
    for (std::size_t ci = 0; ci < cells; ++ci) {
      const std::array<std::size_t, 4> gi{ci, ci + 1, ci + 1, ci};
      const std::array<std::size_t, 4> gj{cj, cj, cj + 1, cj + 1};
      std::array<long, 4> dof{};
      for (int a = 0; a < 4; ++a) {
        const bool interior = gi[a] >= 1 && gi[a] <= n && gj[a] >= 1 && gj[a] <= n;
        dof[a] = interior ? static_cast<long>(grid.index(gi[a], gj[a])) : -1;
      }
      for (int a = 0; a < 4; ++a) {
        if (dof[a] < 0) continue;
        for (int b = 0; b < 4; ++b) {
          if (dof[b] < 0) continue;
          entries.push_back({std::size_t(dof[a]), std::size_t(dof[b]), local[a][b]});
        }
      }
    }
  }
  return la::CsrMatrix::from_triplets(grid.m(), grid.m(), entries);
}

}  // namespace

la::CsrMatrix assemble_mass(const GridConfig& grid) { return assemble(grid, element_mass(grid.h())); }

la::CsrMatrix assemble_stiffness(const GridConfig& grid) {
  return assemble(grid, element_stiffness());
}

double target_state(double x, double y) {
  if (x > 0.0 && x < 0.5 && y > 0.0 && y < 0.5) {
    const double a = 2.0 * x - 1.0;
    const double b = 2.0 * y - 1.0;
    return a * a * b * b;
  }
  return 0.0;
}

la::Vector interpolate_target(const GridConfig& grid) {
  la::Vector v(grid.m());
  for (std::size_t p = 0; p < v.size(); ++p) v[p] = target_state(grid.x(p), grid.y(p));
  return v;
}

la::Vector rhs_hat(const la::CsrMatrix& mass, std::span<const double> ybar_d) {
  return la::spmv(mass, ybar_d);
}

MassSpectrumBounds mass_spectrum_bounds(const GridConfig& grid) {
  MassSpectrumBounds b;
  b.theta = 4.0 * grid.h() * grid.h() / 9.0;
  b.mu_min = b.theta / 4.0;
  b.mu_max = 9.0 * b.theta / 4.0;
  b.alpha_star = 0.75 * b.theta;
  return b;
}

MassExtremes mass_extreme_eigenvalues(const GridConfig& grid) {
  const double theta = mass_spectrum_bounds(grid).theta;
  const double c = std::cos(std::numbers::pi * grid.h());
  return {theta * (1.0 - c / 2.0) * (1.0 - c / 2.0), theta * (1.0 + c / 2.0) * (1.0 + c / 2.0)};
}

MassExtremes stiffness_extreme_eigenvalues(const GridConfig& grid) {
  const double h = grid.h();
  const std::size_t n = grid.n_side();
  std::vector<double> kappa(n), mu(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = std::cos(std::numbers::pi * double(i + 1) * h);
    kappa[i] = 2.0 * (1.0 - c) / h;
    mu[i] = h * (2.0 + c) / 3.0;
  }
  MassExtremes out{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double lam = kappa[i] * mu[j] + mu[i] * kappa[j];
      out.lo = std::min(out.lo, lam);
      out.hi = std::max(out.hi, lam);
    }
  return out;
}

FemSystem FemSystem::build(const GridConfig& grid) {
  auto mass = assemble_mass(grid);
  auto stiffness = assemble_stiffness(grid);
  auto ybar = interpolate_target(grid);
  auto yhat = rhs_hat(mass, ybar);
  return FemSystem{grid, std::move(mass), std::move(stiffness), std::move(ybar), std::move(yhat)};
}

}  // namespace asss::fem
