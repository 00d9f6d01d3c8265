#include "asss/blocksys/system.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace asss::blocksys {

ProblemParams::ProblemParams(double nu, double omega) : nu_(nu), omega_(omega) {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw ConfigError("ProblemParams: nu must be positive and finite, got " + std::to_string(nu));
  }
  if (!(omega >= 0.0) || !std::isfinite(omega)) {
    throw ConfigError("ProblemParams: omega must be non-negative and finite, got " +
                      std::to_string(omega));
  }
}

BlockVector4 BlockVector4::from_vector(la::Vector v) {
  if (v.size() % 4 != 0) {
    throw DimensionError("BlockVector4: length " + std::to_string(v.size()) +
                         " is not divisible by 4");
  }
  BlockVector4 out(0);
  out.m_ = v.size() / 4;
  out.data_ = std::move(v);
  return out;
}

std::span<double> block(std::span<double> x, std::size_t j) {
  const std::size_t m = x.size() / 4;
  return x.subspan(j * m, m);
}

std::span<const double> block(std::span<const double> x, std::size_t j) {
  const std::size_t m = x.size() / 4;
  return x.subspan(j * m, m);
}

namespace {

void check_block_length(std::size_t n, const char* where) {
  if (n % 4 != 0) throw DimensionError(std::string(where) + ": length not divisible by 4");
}

}  // namespace

GOperator GOperator::from(const ProblemParams& p) {
  const double c = 1.0 / std::sqrt(p.nu() * (1.0 + p.nu() * p.omega() * p.omega()));
  return {p.omega() * p.nu() * c, p.sqrt_nu() * c};
}

void GOperator::apply(std::span<const double> x, std::span<double> y) const {
  check_block_length(x.size(), "GOperator::apply");
  la::check_same_size(x.size(), y.size(), "GOperator::apply");
  const std::size_t m = x.size() / 4;
  const double* x1 = x.data();
  const double* x2 = x1 + m;
  const double* x3 = x2 + m;
  const double* x4 = x3 + m;
  double* y1 = y.data();
  double* y2 = y1 + m;
  double* y3 = y2 + m;
  double* y4 = y3 + m;
  for (std::size_t i = 0; i < m; ++i) {
    const double v1 = x1[i], v2 = x2[i], v3 = x3[i], v4 = x4[i];
    y1[i] = a * v2 + b * v3;
    y2[i] = -a * v1 + b * v4;
    y3[i] = -b * v1 - a * v4;
    y4[i] = -b * v2 + a * v3;
  }
}

la::Vector GOperator::apply(std::span<const double> x) const {
  la::Vector y(x.size());
  apply(x, y);
  return y;
}

void apply_G1(const ProblemParams& p, std::span<const double> x, std::span<double> y) {
  check_block_length(x.size(), "apply_G1");
  la::check_same_size(x.size(), y.size(), "apply_G1");
  const std::size_t m = x.size() / 4;
  const double w = p.w();
  for (std::size_t i = 0; i < m; ++i) {
    const double v1 = x[i], v2 = x[m + i], v3 = x[2 * m + i], v4 = x[3 * m + i];
    y[i] = v1 + w * v4;
    y[m + i] = v2 - w * v3;
    y[2 * m + i] = -w * v2 - v3;
    y[3 * m + i] = w * v1 - v4;
  }
}

void apply_G1_inverse(const ProblemParams& p, std::span<const double> x, std::span<double> y) {
  apply_G1(p, x, y);
  const double s = 1.0 / (1.0 + p.w() * p.w());
  for (double& v : y) v *= s;
}

BOperator::BOperator(const la::CsrMatrix& mass, const la::CsrMatrix& stiffness,
                     const ProblemParams& params)
    : mass_(mass),
      stiffness_(stiffness),
      eta_stiffness_(la::scaled(stiffness, params.eta())),
      params_(params),
      g_(GOperator::from(params)) {
  if (mass.nrows() != mass.ncols() || stiffness.nrows() != stiffness.ncols() ||
      mass.nrows() != stiffness.nrows()) {
    throw DimensionError("BOperator: M and K must be square and of equal size");
  }
}

void BOperator::apply_mass_blocks(std::span<const double> x, std::span<double> y) const {
  la::check_same_size(x.size(), size(), "BOperator");
  la::check_same_size(y.size(), size(), "BOperator");
  for (std::size_t j = 0; j < 4; ++j) mass_.multiply(block(x, j), block(y, j));
}

void BOperator::apply_stiffness_blocks(std::span<const double> x, std::span<double> y) const {
  la::check_same_size(x.size(), size(), "BOperator");
  la::check_same_size(y.size(), size(), "BOperator");
  for (std::size_t j = 0; j < 4; ++j) eta_stiffness_.multiply(block(x, j), block(y, j));
}

void BOperator::apply(std::span<const double> x, std::span<double> y) const {
  la::Vector kx(size());
  apply_stiffness_blocks(x, kx);
  g_.apply(kx, y);
  la::Vector mx(size());
  apply_mass_blocks(x, mx);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += mx[i];
}

la::Vector BOperator::apply(std::span<const double> x) const {
  la::Vector y(x.size());
  apply(x, y);
  return y;
}

void BOperator::apply_A4(std::span<const double> x, std::span<double> y) const {
  const auto bx = apply(x);
  apply_G1(params_, bx, y);
}

la::Vector build_rhs_hat(std::span<const double> yhat_re, std::span<const double> yhat_im) {
  const std::size_t m = yhat_re.size();
  if (!yhat_im.empty()) la::check_same_size(yhat_im.size(), m, "build_rhs_hat");
  la::Vector b(4 * m, 0.0);
  std::copy(yhat_re.begin(), yhat_re.end(), b.begin());
  std::copy(yhat_im.begin(), yhat_im.end(), b.begin() + static_cast<std::ptrdiff_t>(m));
  return b;
}

la::Vector build_rhs(std::span<const double> yhat_re, const ProblemParams& p,
                     std::span<const double> yhat_im) {
  const auto bhat = build_rhs_hat(yhat_re, yhat_im);
  la::Vector b(bhat.size());
  apply_G1_inverse(p, bhat, b);
  return b;
}

double residual_main(const BOperator& op, std::span<const double> x, std::span<const double> b) {
  la::check_same_size(b.size(), op.size(), "residual_main");
  auto r = op.apply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  la::Vector g1r(r.size());
  apply_G1(op.params(), r, g1r);
  return la::norm2(g1r);
}

ComplexSolution recover_solution(std::span<const double> x, const ProblemParams& p) {
  check_block_length(x.size(), "recover_solution");
  const std::size_t m = x.size() / 4;
  ComplexSolution s;
  s.y.resize(m);
  s.u.resize(m);
  const double inv = 1.0 / p.sqrt_nu();
  for (std::size_t i = 0; i < m; ++i) {
    s.y[i] = {x[i], x[m + i]};
    s.u[i] = std::complex<double>(x[2 * m + i], x[3 * m + i]) * inv;
  }
  return s;
}

la::CsrMatrix assemble_blocks(std::size_t nb, std::size_t m, std::span<const BlockEntry> blocks) {
  std::vector<la::Triplet> t;
  for (const auto& blk : blocks) {
    if (blk.row >= nb || blk.col >= nb) throw DimensionError("assemble_blocks: block out of range");
    const std::size_t r0 = blk.row * m, c0 = blk.col * m;
    if (blk.mat == nullptr) {
      for (std::size_t i = 0; i < m; ++i) t.push_back({r0 + i, c0 + i, blk.coef});
      continue;
    }
    if (blk.mat->nrows() != m || blk.mat->ncols() != m) {
      throw DimensionError("assemble_blocks: block has wrong size");
    }
    for (std::size_t i = 0; i < m; ++i) {
      const auto cols = blk.mat->row_cols(i);
      const auto vals = blk.mat->row_values(i);
      for (std::size_t p = 0; p < cols.size(); ++p) {
        t.push_back({r0 + i, c0 + cols[p], blk.coef * vals[p]});
      }
    }
  }
  return la::CsrMatrix::from_triplets(nb * m, nb * m, t);
}

la::CsrMatrix assemble_A4(const la::CsrMatrix& mass, const la::CsrMatrix& stiffness,
                          const ProblemParams& p) {
  const double s = p.sqrt_nu(), w = p.w();
  const auto* M = &mass;
  const auto* K = &stiffness;
  const BlockEntry blocks[] = {
      {0, 0, 1.0, M}, {0, 2, s, K},  {0, 3, w, M},   {1, 1, 1.0, M}, {1, 2, -w, M},
      {1, 3, s, K},   {2, 0, s, K},  {2, 1, -w, M},  {2, 2, -1.0, M}, {3, 0, w, M},
      {3, 1, s, K},   {3, 3, -1.0, M},
  };
  return assemble_blocks(4, mass.nrows(), blocks);
}

la::CsrMatrix assemble_B(const la::CsrMatrix& mass, const la::CsrMatrix& stiffness,
                         const ProblemParams& p) {
  const auto g = GOperator::from(p);
  const double eta = p.eta();
  const auto* M = &mass;
  const auto* K = &stiffness;
  const BlockEntry blocks[] = {
      {0, 0, 1.0, M},        {0, 1, g.a * eta, K},  {0, 2, g.b * eta, K},
      {1, 0, -g.a * eta, K}, {1, 1, 1.0, M},        {1, 3, g.b * eta, K},
      {2, 0, -g.b * eta, K}, {2, 2, 1.0, M},        {2, 3, -g.a * eta, K},
      {3, 1, -g.b * eta, K}, {3, 2, g.a * eta, K},  {3, 3, 1.0, M},
  };
  return assemble_blocks(4, mass.nrows(), blocks);
}

la::CsrMatrix assemble_G(std::size_t m, const ProblemParams& p) {
  const auto g = GOperator::from(p);
  const BlockEntry blocks[] = {
      {0, 1, g.a, nullptr},  {0, 2, g.b, nullptr},  {1, 0, -g.a, nullptr},
      {1, 3, g.b, nullptr},  {2, 0, -g.b, nullptr}, {2, 3, -g.a, nullptr},
      {3, 1, -g.b, nullptr}, {3, 2, g.a, nullptr},
  };
  return assemble_blocks(4, m, blocks);
}

la::CsrMatrix assemble_G1(std::size_t m, const ProblemParams& p) {
  const double w = p.w();
  const BlockEntry blocks[] = {
      {0, 0, 1.0, nullptr}, {0, 3, w, nullptr},     {1, 1, 1.0, nullptr},  {1, 2, -w, nullptr},
      {2, 1, -w, nullptr},  {2, 2, -1.0, nullptr},  {3, 0, w, nullptr},    {3, 3, -1.0, nullptr},
  };
  return assemble_blocks(4, m, blocks);
}

PresbForms build_presb_forms(const la::CsrMatrix& mass, const la::CsrMatrix& stiffness,
                             const ProblemParams& p) {
  const std::size_t m = mass.nrows();
  const double s = p.sqrt_nu(), w = p.w();
  const BlockEntry e[] = {{0, 0, 1.0, &mass}, {1, 1, 1.0, &mass}};
  const BlockEntry f[] = {
      {0, 0, s, &stiffness}, {0, 1, -w, &mass}, {1, 0, w, &mass}, {1, 1, s, &stiffness}};
  PresbForms forms{assemble_blocks(2, m, e), assemble_blocks(2, m, f), {}};
  forms.ft = forms.f.transpose();
  return forms;
}

void PresbForms::apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = half();
  la::check_same_size(x.size(), 2 * n, "PresbForms::apply");
  la::check_same_size(y.size(), 2 * n, "PresbForms::apply");
  const auto r = x.first(n), s = x.subspan(n);
  auto top = y.first(n), bottom = y.subspan(n);
  la::Vector tmp(n);
  e.multiply(r, top);
  ft.multiply(s, tmp);
  for (std::size_t i = 0; i < n; ++i) top[i] += tmp[i];
  f.multiply(r, bottom);
  e.multiply(s, tmp);
  for (std::size_t i = 0; i < n; ++i) bottom[i] -= tmp[i];
}

la::CsrMatrix assemble_presb_K(const PresbForms& forms) {
  const BlockEntry blocks[] = {{0, 0, 1.0, &forms.e},
                               {0, 1, 1.0, &forms.ft},
                               {1, 0, 1.0, &forms.f},
                               {1, 1, -1.0, &forms.e}};
  return assemble_blocks(2, forms.half(), blocks);
}

la::CsrMatrix assemble_presb_C(const PresbForms& forms) {
  const BlockEntry blocks[] = {{0, 0, 1.0, &forms.e},  {0, 0, 1.0, &forms.f},
                               {0, 0, 1.0, &forms.ft}, {0, 1, 1.0, &forms.ft},
                               {1, 0, 1.0, &forms.f},  {1, 1, -1.0, &forms.e}};
  return assemble_blocks(2, forms.half(), blocks);
}

}  // namespace asss::blocksys
