#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "asss/fem/q1.hpp"
#include "asss/la/csr.hpp"
#include "asss/la/vector_ops.hpp"

namespace asss::blocksys {

/// Regularization nu > 0 and frequency omega >= 0.
class ProblemParams {
 public:
  ProblemParams(double nu, double omega);

  double nu() const noexcept { return nu_; }
  double omega() const noexcept { return omega_; }
  double sqrt_nu() const noexcept { return std::sqrt(nu_); }
  /// omega * sqrt(nu), the coupling weight of the real 4x4 form.
  double w() const noexcept { return omega_ * std::sqrt(nu_); }
  /// sqrt(nu) / sqrt(1 + nu omega^2), the stiffness scaling in B.
  double eta() const noexcept { return std::sqrt(nu_) / std::sqrt(1.0 + nu_ * omega_ * omega_); }

 private:
  double nu_;
  double omega_;
};

/// A length-4m vector split into four contiguous m-blocks.
class BlockVector4 {
 public:
  explicit BlockVector4(std::size_t m) : m_(m), data_(4 * m, 0.0) {}
  static BlockVector4 from_vector(la::Vector v);

  std::size_t m() const noexcept { return m_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::span<double> block(std::size_t j) { return {data_.data() + j * m_, m_}; }
  std::span<const double> block(std::size_t j) const { return {data_.data() + j * m_, m_}; }
  la::Vector& vector() noexcept { return data_; }
  const la::Vector& vector() const noexcept { return data_; }

 private:
  std::size_t m_;
  la::Vector data_;
};

/// j-th m-block of a length-4m span.
std::span<double> block(std::span<double> x, std::size_t j);
std::span<const double> block(std::span<const double> x, std::size_t j);

/// The skew operator G with G^2 = -I, applied blockwise:
/// G x = (a x2 + b x3; -a x1 + b x4; -b x1 - a x4; -b x2 + a x3).
struct GOperator {
  double a = 0.0;  // omega nu c
  double b = 1.0;  // sqrt(nu) c,  c = 1 / sqrt(nu (1 + nu omega^2))

  static GOperator from(const ProblemParams& p);
  void apply(std::span<const double> x, std::span<double> y) const;
  la::Vector apply(std::span<const double> x) const;
};

/// G1 of the real form and its inverse G1 / (1 + w^2).
void apply_G1(const ProblemParams& p, std::span<const double> x, std::span<double> y);
void apply_G1_inverse(const ProblemParams& p, std::span<const double> x, std::span<double> y);

/// B = blockdiag(M) + G blockdiag(eta K). Also applies the unscaled 4x4 real
/// form A4 = G1 B.
class BOperator {
 public:
  BOperator(const la::CsrMatrix& mass, const la::CsrMatrix& stiffness, const ProblemParams& params);
  BOperator(const fem::FemSystem& fem, const ProblemParams& params)
      : BOperator(fem.mass, fem.stiffness, params) {}

  std::size_t m() const noexcept { return mass_.nrows(); }
  std::size_t size() const noexcept { return 4 * m(); }
  const la::CsrMatrix& mass() const noexcept { return mass_; }
  const la::CsrMatrix& stiffness() const noexcept { return stiffness_; }
  /// eta * K.
  const la::CsrMatrix& scaled_stiffness() const noexcept { return eta_stiffness_; }
  const ProblemParams& params() const noexcept { return params_; }
  const GOperator& g() const noexcept { return g_; }

  void apply(std::span<const double> x, std::span<double> y) const;
  la::Vector apply(std::span<const double> x) const;
  void apply_A4(std::span<const double> x, std::span<double> y) const;

  /// blockdiag(M) x and blockdiag(eta K) x.
  void apply_mass_blocks(std::span<const double> x, std::span<double> y) const;
  void apply_stiffness_blocks(std::span<const double> x, std::span<double> y) const;

 private:
  la::CsrMatrix mass_;
  la::CsrMatrix stiffness_;
  la::CsrMatrix eta_stiffness_;
  ProblemParams params_;
  GOperator g_;
};

/// (Re yhat; Im yhat; 0; 0).
la::Vector build_rhs_hat(std::span<const double> yhat_re, std::span<const double> yhat_im = {});

/// G1^{-1} (Re yhat; Im yhat; 0; 0).
la::Vector build_rhs(std::span<const double> yhat_re, const ProblemParams& p,
                     std::span<const double> yhat_im = {});

/// ||G1 (b - B x)||_2, the residual norm of the unscaled 4x4 real system.
double residual_main(const BOperator& op, std::span<const double> x, std::span<const double> b);

struct ComplexSolution {
  std::vector<std::complex<double>> y;  // state
  std::vector<std::complex<double>> u;  // control
};

/// y = x1 + i x2, u = (x3 + i x4) / sqrt(nu).
ComplexSolution recover_solution(std::span<const double> x, const ProblemParams& p);

/// Real 2x2 block form [[E, F^T], [F, -E]] over (Re y, Im y | Re q, Im q) with
/// E = blockdiag(M, M) and F = [[sqrt(nu) K, -w M], [w M, sqrt(nu) K]].
struct PresbForms {
  la::CsrMatrix e;
  la::CsrMatrix f;
  la::CsrMatrix ft;

  std::size_t half() const noexcept { return e.nrows(); }
  /// Full operator on a length-4m vector.
  void apply(std::span<const double> x, std::span<double> y) const;
};

PresbForms build_presb_forms(const la::CsrMatrix& mass, const la::CsrMatrix& stiffness,
                             const ProblemParams& p);

/// One block of a block-structured sparse matrix: coef * mat (identity if mat is null).
struct BlockEntry {
  std::size_t row;
  std::size_t col;
  double coef;
  const la::CsrMatrix* mat;
};

/// Assembles an (nb*m) x (nb*m) sparse matrix from m x m blocks.
la::CsrMatrix assemble_blocks(std::size_t nb, std::size_t m, std::span<const BlockEntry> blocks);

/// Sparse assemblies used for export and dense verification.
la::CsrMatrix assemble_A4(const la::CsrMatrix& mass, const la::CsrMatrix& stiffness,
                          const ProblemParams& p);
la::CsrMatrix assemble_B(const la::CsrMatrix& mass, const la::CsrMatrix& stiffness,
                         const ProblemParams& p);
la::CsrMatrix assemble_G(std::size_t m, const ProblemParams& p);
la::CsrMatrix assemble_G1(std::size_t m, const ProblemParams& p);
la::CsrMatrix assemble_presb_K(const PresbForms& forms);
/// [[E + F + F^T, F^T], [F, -E]].
la::CsrMatrix assemble_presb_C(const PresbForms& forms);

}  // namespace asss::blocksys
