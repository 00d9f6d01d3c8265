#include "asss/la/eigen.hpp"
#include "asss/la/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <limits>
#include <random>

#include "asss/la/cholesky.hpp"

namespace asss::la {

namespace {

Vector start_vector(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(0.5, 1.5);
  Vector x(n);
  for (double& v : x) v = dist(gen);
  scale(1.0 / norm2(x), x);
  return x;
}

template <typename Step>
EigenEstimate rayleigh_iteration(const LinearOperator& a, std::size_t n,
                                 const EigenIterationConfig& cfg, Step step) {
  if (n == 0) throw DimensionError("eigen iteration: empty operator");
  Vector x = start_vector(n, cfg.seed);
  Vector ax(n), next(n);
  EigenEstimate est;
  a(x, ax);
  double previous = dot(x, ax);
  est.value = previous;
  for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
    step(x, ax, next);
    scale(1.0 / norm2(next), next);
    x.swap(next);
    a(x, ax);
    const double rq = dot(x, ax);
    est.value = rq;
    est.iterations = it;
    if (std::abs(rq - previous) <= cfg.tol_relative * std::abs(rq)) {
      est.converged = true;
      break;
    }
    previous = rq;
  }
  return est;
}

}  // namespace

EigenEstimate power_iteration(const LinearOperator& a, std::size_t n,
                              const EigenIterationConfig& cfg) {
  return rayleigh_iteration(a, n, cfg,
                            [](const Vector&, const Vector& ax, Vector& next) { next = ax; });
}

EigenEstimate inverse_power_iteration(const CsrMatrix& a, const EigenIterationConfig& cfg,
                                      double shift) {
  const auto factor = CholeskyFactor::factor(shift == 0.0 ? a : shifted(a, -shift));
  return rayleigh_iteration(as_operator(a), a.nrows(), cfg,
                            [&](const Vector& x, const Vector&, Vector& next) {
                              next = x;
                              factor.solve_in_place(next);
                            });
}

std::vector<double> dense_eig_symmetric(const DenseMatrix& input, double off_tol) {
  const std::size_t n = input.rows();
  if (input.cols() != n) throw DimensionError("dense_eig_symmetric: matrix must be square");
  DenseMatrix a = input;
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  const double scale_ref = std::max(max_abs_entry(a), 1e-300);
  for (std::size_t sweep = 0; sweep < 100 && off_norm() > off_tol * scale_ref; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

DenseMatrix hessenberg(DenseMatrix a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionError("hessenberg: matrix must be square");
  Vector u(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha += a(i, k) * a(i, k);
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (a(k + 1, k) > 0.0) alpha = -alpha;
    double unorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      u[i] = a(i, k) - (i == k + 1 ? alpha : 0.0);
      unorm2 += u[i] * u[i];
    }
    if (unorm2 == 0.0) continue;
    const double f = 2.0 / unorm2;
    // A <- (I - f u u^T) A
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += u[i] * a(i, j);
      s *= f;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * u[i];
    }
    // A <- A (I - f u u^T)
    for (std::size_t i = 0; i < n; ++i) {
      auto row = a.row(i);
      double s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += row[j] * u[j];
      s *= f;
      for (std::size_t j = k + 1; j < n; ++j) row[j] -= s * u[j];
    }
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
  return a;
}

std::vector<std::complex<double>> dense_eig_general(const DenseMatrix& input) {
  const std::size_t n = input.rows();
  if (input.cols() != n) throw DimensionError("dense_eig_general: matrix must be square");
  std::vector<std::complex<double>> eig(n);
  if (n == 0) return eig;
  DenseMatrix a = hessenberg(input);

  // Francis double-shift QR on the active window [l, hi], deflating one or two
  // eigenvalues at a time from the bottom (EISPACK hqr, eigenvalues only).
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = (i > 0 ? i - 1 : 0); j < n; ++j) norm += std::abs(a(i, j));
  const double eps = std::numeric_limits<double>::epsilon();
  const std::size_t max_sweeps = 30 * n;
  std::size_t total_sweeps = 0;

  long hi = static_cast<long>(n) - 1;
  double shift_total = 0.0;
  long its = 0;
  while (hi >= 0) {
    long l = hi;
    for (; l > 0; --l) {
      double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
      if (s == 0.0) s = norm;
      if (std::abs(a(l, l - 1)) < eps * s) break;
    }

    double x = a(hi, hi);
    if (l == hi) {
      eig[hi] = {x + shift_total, 0.0};
      --hi;
      its = 0;
      continue;
    }
    double y = a(hi - 1, hi - 1);
    double w = a(hi, hi - 1) * a(hi - 1, hi);
    if (l == hi - 1) {
      const double p = 0.5 * (y - x);
      const double q = p * p + w;
      const double z = std::sqrt(std::abs(q));
      x += shift_total;
      if (q >= 0.0) {
        const double zz = p >= 0.0 ? p + z : p - z;
        eig[hi - 1] = {x + zz, 0.0};
        eig[hi] = eig[hi - 1];
        if (zz != 0.0) eig[hi] = {x - w / zz, 0.0};
      } else {
        eig[hi - 1] = {x + p, z};
        eig[hi] = {x + p, -z};
      }
      hi -= 2;
      its = 0;
      continue;
    }

    if (++total_sweeps > max_sweeps) {
      throw ConvergenceError("dense_eig_general: QR iteration did not converge");
    }
    if (its == 10) {  // Wilkinson's exceptional shift
      shift_total += x;
      for (long i = 0; i <= hi; ++i) a(i, i) -= x;
      const double s = std::abs(a(hi, hi - 1)) + std::abs(a(hi - 1, hi - 2));
      x = y = 0.75 * s;
      w = -0.4375 * s * s;
    }
    if (its == 30) {  // second exceptional shift
      double s = 0.5 * (y - x);
      s = s * s + w;
      if (s > 0.0) {
        s = std::sqrt(s);
        if (y < x) s = -s;
        s = x - w / (0.5 * (y - x) + s);
        for (long i = 0; i <= hi; ++i) a(i, i) -= s;
        shift_total += s;
        x = y = w = 0.964;
      }
    }
    ++its;

    // look for two consecutive small subdiagonal elements
    double p = 0.0, q = 0.0, r = 0.0;
    long m = hi - 2;
    for (; m >= l; --m) {
      const double z = a(m, m);
      const double rr = x - z;
      const double ss = y - z;
      p = (rr * ss - w) / a(m + 1, m) + a(m, m + 1);
      q = a(m + 1, m + 1) - z - rr - ss;
      r = a(m + 2, m + 1);
      const double s = std::abs(p) + std::abs(q) + std::abs(r);
      p /= s;
      q /= s;
      r /= s;
      if (m == l) break;
      if (std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r)) <
          eps * (std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1))))) {
        break;
      }
    }
    for (long i = m + 2; i <= hi; ++i) {
      a(i, i - 2) = 0.0;
      if (i > m + 2) a(i, i - 3) = 0.0;
    }

    for (long k = m; k <= hi - 1; ++k) {
      const bool notlast = k != hi - 1;
      double scale_k = 0.0;
      if (k != m) {
        p = a(k, k - 1);
        q = a(k + 1, k - 1);
        r = notlast ? a(k + 2, k - 1) : 0.0;
        scale_k = std::abs(p) + std::abs(q) + std::abs(r);
        if (scale_k == 0.0) continue;
        p /= scale_k;
        q /= scale_k;
        r /= scale_k;
      }
      double s = std::sqrt(p * p + q * q + r * r);
      if (p < 0.0) s = -s;
      if (s == 0.0) continue;
      if (k != m) a(k, k - 1) = -s * scale_k;
      else if (l != m) a(k, k - 1) = -a(k, k - 1);
      p += s;
      const double hx = p / s;
      const double hy = q / s;
      const double hz = r / s;
      q /= p;
      r /= p;
      for (long j = k; j <= hi; ++j) {
        double t = a(k, j) + q * a(k + 1, j);
        if (notlast) {
          t += r * a(k + 2, j);
          a(k + 2, j) -= t * hz;
        }
        a(k, j) -= t * hx;
        a(k + 1, j) -= t * hy;
      }
      const long imax = std::min(hi, k + 3);
      for (long i = l; i <= imax; ++i) {
        double t = hx * a(i, k) + hy * a(i, k + 1);
        if (notlast) {
          t += hz * a(i, k + 2);
          a(i, k + 2) -= t * r;
        }
        a(i, k) -= t;
        a(i, k + 1) -= t * q;
      }
    }
  }
  return eig;
}

double spectral_radius(std::span<const std::complex<double>> spectrum) {
  double r = 0.0;
  for (const auto& z : spectrum) r = std::max(r, std::abs(z));
  return r;
}

void write_spectrum_csv(std::ostream& out, std::span<const std::complex<double>> spectrum) {
  out << "re,im\n";
  const auto old = out.precision();
  out << std::setprecision(17);
  for (const auto& z : spectrum) out << z.real() << ',' << z.imag() << '\n';
  out.precision(old);
}

}  // namespace asss::la
