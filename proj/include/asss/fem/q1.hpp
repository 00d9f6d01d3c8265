#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "asss/la/csr.hpp"
#include "asss/la/vector_ops.hpp"

namespace asss::fem {

/// Uniform mesh of the unit square with h = 2^-k. Interior nodes are numbered
/// lexicographically with x running fastest.
class GridConfig {
 public:
  explicit GridConfig(int k);

  int k() const noexcept { return k_; }
  double h() const noexcept { return h_; }
  /// Interior nodes per side, 2^k - 1.
  std::size_t n_side() const noexcept { return n_side_; }
  /// Interior node count.
  std::size_t m() const noexcept { return n_side_ * n_side_; }

  /// Interior node (i, j), 1-based grid indices, to unknown index.
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    return (j - 1) * n_side_ + (i - 1);
  }
  double x(std::size_t unknown) const noexcept { return h_ * double(unknown % n_side_ + 1); }
  double y(std::size_t unknown) const noexcept { return h_ * double(unknown / n_side_ + 1); }

 private:
  int k_;
  double h_;
  std::size_t n_side_;
};

using ElementMatrix = std::array<std::array<double, 4>, 4>;

/// Q1 element matrices on an h x h cell, local nodes counter-clockwise from
/// the lower-left corner.
ElementMatrix element_mass(double h);
ElementMatrix element_stiffness();

la::CsrMatrix assemble_mass(const GridConfig& grid);
la::CsrMatrix assemble_stiffness(const GridConfig& grid);

/// (2x-1)^2 (2y-1)^2 on the open square (0, 1/2)^2, zero elsewhere.
double target_state(double x, double y);

/// Nodal values of the target state at interior nodes.
la::Vector interpolate_target(const GridConfig& grid);

/// M * ybar_d.
la::Vector rhs_hat(const la::CsrMatrix& mass, std::span<const double> ybar_d);

/// Closed-form mass-matrix spectral data for Q1 on the uniform mesh:
/// constant diagonal theta = 4h^2/9 and the bounds theta/4, 9 theta/4.
struct MassSpectrumBounds {
  double theta = 0.0;
  double mu_min = 0.0;
  double mu_max = 0.0;
  double alpha_star = 0.0;  // sqrt(mu_min mu_max) = 3 theta / 4
};
MassSpectrumBounds mass_spectrum_bounds(const GridConfig& grid);

/// Exact extreme eigenvalues of the assembled mass matrix, which sit strictly
/// inside the bounds: theta (1 -+ cos(pi h)/2)^2.
struct MassExtremes {
  double lo = 0.0;
  double hi = 0.0;
};
MassExtremes mass_extreme_eigenvalues(const GridConfig& grid);

/// Exact extreme eigenvalues of the assembled stiffness matrix, from its
/// tensor-product structure K = K1 (x) M1 + M1 (x) K1.
MassExtremes stiffness_extreme_eigenvalues(const GridConfig& grid);

struct FemSystem {
  GridConfig grid;
  la::CsrMatrix mass;
  la::CsrMatrix stiffness;
  la::Vector ybar_d;
  la::Vector yhat_d;

  static FemSystem build(const GridConfig& grid);
  static FemSystem build(int k) { return build(GridConfig(k)); }
};

}  // namespace asss::fem
