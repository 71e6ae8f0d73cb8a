// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#pragma once

#include <cmath>
#include <stdexcept>

namespace circmat {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Raised for conditions that are numerical rather than parameter mistakes:
// singular systems, positive-definiteness violations, unreachable tolerances.
// CLI maps std::invalid_argument to exit code 2 and numeric_error to 3.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// cosh(x) * exp(-s) for |x| <= s, without overflow for large s.
inline double scaled_cosh(double x, double s) {
  if (s < 350.0) return std::cosh(x) * std::exp(-s);
  return 0.5 * (std::exp(x - s) + std::exp(-x - s));
}

// sinh(x) * exp(-s) for |x| <= s.
inline double scaled_sinh(double x, double s) {
  if (s < 350.0) return std::sinh(x) * std::exp(-s);
  return 0.5 * (std::exp(x - s) - std::exp(-x - s));
}

// sinh(s/2) * exp(-s/2) = (1 - exp(-s)) / 2, accurate for small s.
inline double scaled_sinh_half(double s) { return -0.5 * std::expm1(-s); }

// cosh(s/2) * exp(-s/2) = (1 + exp(-s)) / 2.
inline double scaled_cosh_half(double s) { return 0.5 * (1.0 + std::exp(-s)); }

}  // namespace detail
}  // namespace circmat
