#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "asss/la/eigen.hpp"
#include "asss/la/krylov.hpp"
#include "test_helpers.hpp"

using namespace asss;
using namespace asss::la;
using asss::testing::random_dense;
using asss::testing::random_spd_dense;
using asss::testing::to_csr;

namespace {

// Each eigenvalue in `got` has a distinct partner in `want` within tol.
bool same_spectrum(std::vector<std::complex<double>> got, std::vector<std::complex<double>> want,
                   double tol) {
  if (got.size() != want.size()) return false;
  std::vector<char> used(want.size(), 0);
  for (const auto& z : got) {
    std::size_t best = want.size();
    double dist = tol;
    for (std::size_t k = 0; k < want.size(); ++k) {
      if (!used[k] && std::abs(z - want[k]) <= dist) {
        dist = std::abs(z - want[k]);
        best = k;
      }
    }
    if (best == want.size()) return false;
    used[best] = 1;
  }
  return true;
}

}  // namespace

TEST_CASE("power and inverse power on diag(1,2,5)") {
  const std::vector<double> d{1.0, 2.0, 5.0};
  const auto a = CsrMatrix::diagonal(d);
  const auto hi = power_iteration(as_operator(a), 3);
  const auto lo = inverse_power_iteration(a);
  CHECK(hi.converged);
  CHECK(lo.converged);
  CHECK(std::abs(hi.value - 5.0) <= 1e-8 * 5.0);
  CHECK(std::abs(lo.value - 1.0) <= 1e-8);
}

TEST_CASE("power iteration reports exhaustion") {
  const std::vector<double> d{1.0, 0.999, 0.998};
  EigenIterationConfig cfg;
  cfg.max_iterations = 3;
  cfg.tol_relative = 1e-15;
  const auto est = power_iteration(as_operator(CsrMatrix::diagonal(d)), 3, cfg);
  CHECK_FALSE(est.converged);
  CHECK(est.iterations == 3);
  CHECK(est.value > 0.99);
}

TEST_CASE("power iteration extremes match the Jacobi spectrum on random SPD 40x40") {
  std::mt19937 gen(31);
  const auto dense = random_spd_dense(40, gen, 0.5);
  const auto a = to_csr(dense);
  const auto spectrum = dense_eig_symmetric(dense);
  EigenIterationConfig cfg;
  cfg.tol_relative = 1e-14;
  const auto hi = power_iteration(as_operator(a), 40, cfg);
  const auto lo = inverse_power_iteration(a, cfg);
  CHECK(std::abs(hi.value - spectrum.back()) <= 1e-6 * spectrum.back());
  CHECK(std::abs(lo.value - spectrum.front()) <= 1e-6 * spectrum.front());
  // Rayleigh quotients always lie inside the spectrum
  CHECK(hi.value <= spectrum.back() * (1 + 1e-12));
  CHECK(lo.value >= spectrum.front() * (1 - 1e-12));
}

TEST_CASE("dense_eig_symmetric: diagonal and a 2x2 with known roots") {
  DenseMatrix d(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  CHECK(dense_eig_symmetric(d) == std::vector<double>{1.0, 2.0, 3.0});

  DenseMatrix s(2, 2);
  s(0, 0) = 2.0;
  s(0, 1) = s(1, 0) = 1.0;
  s(1, 1) = 2.0;
  const auto e = dense_eig_symmetric(s);
  CHECK(e[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e[1] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("dense_eig_symmetric: trace and Frobenius norm are preserved") {
  std::mt19937 gen(4);
  const auto a = random_spd_dense(25, gen);
  const auto e = dense_eig_symmetric(a);
  double trace = 0.0, fro = 0.0, esum = 0.0, esq = 0.0;
  for (std::size_t i = 0; i < 25; ++i) {
    trace += a(i, i);
    for (std::size_t j = 0; j < 25; ++j) fro += a(i, j) * a(i, j);
  }
  for (double v : e) {
    esum += v;
    esq += v * v;
  }
  CHECK(esum == doctest::Approx(trace).epsilon(1e-12));
  CHECK(esq == doctest::Approx(fro).epsilon(1e-12));
}

TEST_CASE("dense_eig_general: diagonal, rotation, companion of z^3 - 1") {
  DenseMatrix d(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  CHECK(same_spectrum(dense_eig_general(d), {{1, 0}, {2, 0}, {3, 0}}, 1e-14));

  DenseMatrix rot(2, 2);
  rot(0, 1) = -1.0;
  rot(1, 0) = 1.0;
  CHECK(same_spectrum(dense_eig_general(rot), {{0, 1}, {0, -1}}, 1e-14));

  DenseMatrix c(3, 3);  // companion matrix of z^3 - 1
  c(0, 2) = 1.0;
  c(1, 0) = 1.0;
  c(2, 1) = 1.0;
  const double pi = std::acos(-1.0);
  std::vector<std::complex<double>> roots;
  for (int k = 0; k < 3; ++k) roots.push_back(std::polar(1.0, 2.0 * pi * k / 3.0));
  CHECK(same_spectrum(dense_eig_general(c), roots, 1e-10));
}

TEST_CASE("dense_eig_general: companion matrix with known real and complex roots") {
  // (z - 1)(z - 2)(z - 3)(z^2 + 2z + 5): roots 1, 2, 3, -1 +- 2i
  // expanded: z^5 - 4z^4 + 2z^3 + 8z^2 + 13z... computed from the product below
  std::vector<std::complex<double>> roots{{1, 0}, {2, 0}, {3, 0}, {-1, 2}, {-1, -2}};
  std::vector<std::complex<double>> coeffs{1.0};
  for (const auto& r : roots) {
    std::vector<std::complex<double>> next(coeffs.size() + 1, 0.0);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      next[k] += coeffs[k];
      next[k + 1] -= r * coeffs[k];
    }
    coeffs = next;
  }
  const std::size_t n = roots.size();
  DenseMatrix c(n, n);
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -coeffs[n - i].real();
  CHECK(same_spectrum(dense_eig_general(c), roots, 1e-9));
}

TEST_CASE("dense_eig_general: symmetric input agrees with Jacobi") {
  std::mt19937 gen(12);
  const auto a = random_spd_dense(60, gen);
  const auto general = dense_eig_general(a);
  const auto sym = dense_eig_symmetric(a);
  std::vector<std::complex<double>> want(sym.begin(), sym.end());
  CHECK(same_spectrum(general, want, 1e-9 * sym.back()));
}

TEST_CASE("dense_eig_general: random real matrices give conjugate-closed spectra") {
  std::mt19937 gen(77);
  for (std::size_t n : {5u, 17u, 64u, 150u}) {
    const auto a = random_dense(n, n, gen);
    const auto eig = dense_eig_general(a);
    REQUIRE(eig.size() == n);
    std::vector<std::complex<double>> conj;
    std::complex<double> sum = 0.0;
    for (const auto& z : eig) {
      conj.push_back(std::conj(z));
      sum += z;
    }
    CHECK(same_spectrum(eig, conj, 1e-8));
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += a(i, i);
    CHECK(std::abs(sum.real() - trace) <= 1e-9 * n);
    CHECK(std::abs(sum.imag()) <= 1e-9 * n);
  }
}

TEST_CASE("dense_eig_general: similarity transform preserves the spectrum") {
  std::mt19937 gen(21);
  const auto a = random_dense(40, 40, gen);
  auto s = random_dense(40, 40, gen);
  for (std::size_t i = 0; i < 40; ++i) s(i, i) += 8.0;
  const auto b = s * a * inverse(s);
  CHECK(same_spectrum(dense_eig_general(a), dense_eig_general(b), 1e-8));
}

TEST_CASE("hessenberg form is upper Hessenberg") {
  std::mt19937 gen(2);
  const auto h = hessenberg(random_dense(12, 12, gen));
  for (std::size_t i = 2; i < 12; ++i)
    for (std::size_t j = 0; j + 1 < i; ++j) CHECK(h(i, j) == 0.0);
}

TEST_CASE("spectrum csv has re,im header") {
  std::vector<std::complex<double>> z{{1.0, 0.5}, {1.0, -0.5}};
  std::ostringstream out;
  write_spectrum_csv(out, z);
  CHECK(out.str().rfind("re,im\n1,0.5\n", 0) == 0);
  CHECK(spectral_radius(z) == doctest::Approx(std::sqrt(1.25)));
}
