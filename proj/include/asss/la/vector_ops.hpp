#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "asss/la/errors.hpp"

namespace asss::la {

using Vector = std::vector<double>;

inline void check_same_size(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    throw DimensionError(std::string(where) + ": size mismatch " + std::to_string(a) + " vs " +
                         std::to_string(b));
  }
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  check_same_size(x.size(), y.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

/// y += a * x
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  check_same_size(x.size(), y.size(), "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

inline void scale(double a, std::span<double> x) {
  for (double& v : x) v *= a;
}

inline void copy(std::span<const double> x, std::span<double> y) {
  check_same_size(x.size(), y.size(), "copy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i];
}

inline Vector subtract(std::span<const double> x, std::span<const double> y) {
  check_same_size(x.size(), y.size(), "subtract");
  Vector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

inline double max_abs_diff(std::span<const double> x, std::span<const double> y) {
  check_same_size(x.size(), y.size(), "max_abs_diff");
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

}  // namespace asss::la
