#include "asss/la/cholesky.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <string>

namespace asss::la {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

CsrMatrix permute_symmetric(const CsrMatrix& a, std::span<const std::size_t> perm) {
  const std::size_t n = a.nrows();
  std::vector<std::size_t> inverse(n);
  for (std::size_t k = 0; k < n; ++k) inverse[perm[k]] = k;
  std::vector<Triplet> entries;
  entries.reserve(a.nnz());
  for (std::size_t i = 0; i < n; ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    for (std::size_t q = 0; q < cols.size(); ++q) {
      entries.push_back({inverse[i], inverse[cols[q]], vals[q]});
    }
  }
  return CsrMatrix::from_triplets(n, n, entries);
}

// Elimination tree from the lower triangle of a symmetric matrix (row k holds
// A(k, 0..k)).
std::vector<std::size_t> elimination_tree(const CsrMatrix& a) {
  const std::size_t n = a.nrows();
  std::vector<std::size_t> parent(n, kNone), ancestor(n, kNone);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i : a.row_cols(k)) {
      while (i != kNone && i < k) {
        const std::size_t next = ancestor[i];
        ancestor[i] = k;
        if (next == kNone) parent[i] = k;
        i = next;
      }
    }
  }
  return parent;
}

// Nonzero pattern of row k of L (excluding the diagonal), in topological order.
void row_pattern(const CsrMatrix& a, std::size_t k, const std::vector<std::size_t>& parent,
                 std::vector<std::size_t>& mark, std::vector<std::size_t>& stack,
                 std::vector<std::size_t>& out) {
  out.clear();
  mark[k] = k;
  for (std::size_t i : a.row_cols(k)) {
    if (i > k) break;
    std::size_t len = 0;
    for (; mark[i] != k; i = parent[i]) {
      stack[len++] = i;
      mark[i] = k;
    }
    while (len > 0) out.push_back(stack[--len]);
  }
  // Each walk is pushed so that ancestors follow descendants; a global sort
  // gives a valid topological order as well, since parent[j] > j.
  std::sort(out.begin(), out.end());
}

}  // namespace

void lower_triangular_solve_in_place(const CsrMatrix& lower, std::span<double> x) {
  const std::size_t n = lower.nrows();
  check_same_size(x.size(), n, "triangular solve");
  const auto off = lower.row_offsets();
  const auto cols = lower.col_indices();
  const auto vals = lower.values();
  for (std::size_t i = 0; i < n; ++i) {
    double s = x[i];
    const std::size_t last = off[i + 1] - 1;
    for (std::size_t p = off[i]; p < last; ++p) s -= vals[p] * x[cols[p]];
    x[i] = s / vals[last];
  }
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t last = off[i + 1] - 1;
    const double xi = x[i] / vals[last];
    x[i] = xi;
    for (std::size_t p = off[i]; p < last; ++p) x[cols[p]] -= vals[p] * xi;
  }
}

CholeskyFactor CholeskyFactor::factor(const CsrMatrix& input,
                                      std::span<const std::size_t> permutation) {
  if (input.nrows() != input.ncols()) throw DimensionError("cholesky: matrix must be square");
  const std::size_t n = input.nrows();
  CholeskyFactor f;
  CsrMatrix permuted;
  const CsrMatrix* a = &input;
  if (!permutation.empty()) {
    if (permutation.size() != n) throw DimensionError("cholesky: permutation has wrong length");
    f.perm_.assign(permutation.begin(), permutation.end());
    permuted = permute_symmetric(input, permutation);
    a = &permuted;
  }

  const auto parent = elimination_tree(*a);
  std::vector<std::size_t> mark(n, kNone), stack(n), pattern;
  pattern.reserve(n);

  // Column storage of L built up row by row; columns receive rows in
  // increasing order so each column list stays sorted.
  std::vector<std::vector<std::size_t>> col_rows(n);
  std::vector<std::vector<double>> col_vals(n);
  std::vector<double> diag(n);
  std::vector<double> work(n, 0.0);

  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<std::size_t> lcols;
  std::vector<double> lvals;

  for (std::size_t k = 0; k < n; ++k) {
    row_pattern(*a, k, parent, mark, stack, pattern);
    double d = 0.0;
    const auto cols = a->row_cols(k);
    const auto vals = a->row_values(k);
    for (std::size_t q = 0; q < cols.size(); ++q) {
      if (cols[q] < k) work[cols[q]] = vals[q];
      else if (cols[q] == k) d = vals[q];
    }
    for (std::size_t j : pattern) {
      const double lkj = work[j] / diag[j];
      work[j] = 0.0;
      const auto& rows = col_rows[j];
      const auto& cv = col_vals[j];
      for (std::size_t p = 0; p < rows.size(); ++p) work[rows[p]] -= cv[p] * lkj;
      d -= lkj * lkj;
      col_rows[j].push_back(k);
      col_vals[j].push_back(lkj);
      lcols.push_back(j);
      lvals.push_back(lkj);
    }
    if (!(d > 0.0)) throw NotSpdError("cholesky: matrix is not SPD", k);
    diag[k] = std::sqrt(d);
    lcols.push_back(k);
    lvals.push_back(diag[k]);
    offsets[k + 1] = lcols.size();
  }
  f.lower_ = CsrMatrix(n, n, std::move(offsets), std::move(lcols), std::move(lvals));
  return f;
}

void CholeskyFactor::solve_in_place(std::span<double> x) const {
  if (perm_.empty()) {
    lower_triangular_solve_in_place(lower_, x);
    return;
  }
  Vector y(x.size());
  for (std::size_t k = 0; k < perm_.size(); ++k) y[k] = x[perm_[k]];
  lower_triangular_solve_in_place(lower_, y);
  for (std::size_t k = 0; k < perm_.size(); ++k) x[perm_[k]] = y[k];
}

Vector CholeskyFactor::solve(std::span<const double> b) const {
  Vector x(b.begin(), b.end());
  solve_in_place(x);
  return x;
}

IncompleteCholeskyFactor IncompleteCholeskyFactor::factor(const CsrMatrix& a, double droptol) {
  if (a.nrows() != a.ncols()) throw DimensionError("ichol: matrix must be square");
  if (!(droptol >= 0.0)) throw ConfigError("ichol: drop tolerance must be non-negative");
  const std::size_t n = a.nrows();
  const Vector thresholds = [&] {
    Vector t = row_norms(a);
    for (double& v : t) v *= droptol;
    return t;
  }();

  std::vector<std::vector<std::size_t>> col_rows(n);
  std::vector<std::vector<double>> col_vals(n);
  std::vector<double> diag(n);
  std::vector<double> work(n, 0.0);
  std::vector<char> in_pattern(n, 0);
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> pending;

  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<std::size_t> lcols;
  std::vector<double> lvals;

  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    for (std::size_t q = 0; q < cols.size(); ++q) {
      const std::size_t j = cols[q];
      if (j < i) {
        work[j] = vals[q];
        in_pattern[j] = 1;
        pending.push(j);
      } else if (j == i) {
        d = vals[q];
      }
    }
    while (!pending.empty()) {
      const std::size_t j = pending.top();
      pending.pop();
      in_pattern[j] = 0;
      const double lij = work[j] / diag[j];
      work[j] = 0.0;
      if (std::abs(lij) < thresholds[i] || lij == 0.0) continue;
      const auto& rows = col_rows[j];
      const auto& cv = col_vals[j];
      for (std::size_t p = 0; p < rows.size(); ++p) {
        const std::size_t r = rows[p];
        if (r >= i) break;
        work[r] -= cv[p] * lij;
        if (!in_pattern[r]) {
          in_pattern[r] = 1;
          pending.push(r);
        }
      }
      d -= lij * lij;
      col_rows[j].push_back(i);
      col_vals[j].push_back(lij);
      lcols.push_back(j);
      lvals.push_back(lij);
    }
    if (!(d > 0.0)) throw NotSpdError("ichol: non-positive pivot", i);
    diag[i] = std::sqrt(d);
    lcols.push_back(i);
    lvals.push_back(diag[i]);
    offsets[i + 1] = lcols.size();
  }

  IncompleteCholeskyFactor f;
  f.lower_ = CsrMatrix(n, n, std::move(offsets), std::move(lcols), std::move(lvals));
  f.droptol_ = droptol;
  return f;
}

IncompleteCholeskyFactor IncompleteCholeskyFactor::factor_with_fallback(const CsrMatrix& a,
                                                                        double droptol) {
  try {
    return factor(a, droptol);
  } catch (const NotSpdError&) {
    Vector d = a.diagonal();
    for (double& v : d) v *= 1e-3;
    auto f = factor(linear_combination(1.0, a, 1.0, CsrMatrix::diagonal(d)), droptol);
    f.shifted_ = true;
    return f;
  }
}

void IncompleteCholeskyFactor::solve_in_place(std::span<double> x) const {
  lower_triangular_solve_in_place(lower_, x);
}

Vector IncompleteCholeskyFactor::solve(std::span<const double> b) const {
  Vector x(b.begin(), b.end());
  solve_in_place(x);
  return x;
}

std::vector<std::size_t> reverse_cuthill_mckee(const CsrMatrix& a) {
  const std::size_t n = a.nrows();
  std::vector<std::size_t> degree(n);
  for (std::size_t i = 0; i < n; ++i) degree[i] = a.row_cols(i).size();
  std::vector<char> visited(n, 0);
  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<std::size_t> by_degree(n);
  std::iota(by_degree.begin(), by_degree.end(), std::size_t{0});
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](std::size_t x, std::size_t y) { return degree[x] < degree[y]; });
  std::vector<std::size_t> nbrs;
  for (std::size_t start : by_degree) {
    if (visited[start]) continue;
    std::size_t head = order.size();
    order.push_back(start);
    visited[start] = 1;
    while (head < order.size()) {
      const std::size_t v = order[head++];
      nbrs.clear();
      for (std::size_t w : a.row_cols(v)) {
        if (!visited[w]) {
          visited[w] = 1;
          nbrs.push_back(w);
        }
      }
      std::stable_sort(nbrs.begin(), nbrs.end(),
                       [&](std::size_t x, std::size_t y) { return degree[x] < degree[y]; });
      order.insert(order.end(), nbrs.begin(), nbrs.end());
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

}  // namespace asss::la
