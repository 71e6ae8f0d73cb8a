// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#include "circmat/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "circmat/common.hpp"

namespace circmat {

namespace {

constexpr std::int64_t kTruncationCap = 10'000'000;

void check_params(double kappa, double alpha, double tol) {
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  if (!(alpha > 0.5))
    throw std::invalid_argument(
        "smoothness exponent alpha must exceed 1/2 (series diverges)");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

}  // namespace

double spectral_tail_bound(double alpha, double truncation) {
  return 2.0 * std::pow(two_pi, -2.0 * alpha) *
         std::pow(truncation, 1.0 - 2.0 * alpha) / (2.0 * alpha - 1.0);
}

std::int64_t spectral_truncation_index(double alpha, double tol) {
  if (!(alpha > 0.5))
    throw std::invalid_argument(
        "smoothness exponent alpha must exceed 1/2 (series diverges)");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  // Invert the tail bound for K, then nudge for floating point slack.
  const double raw = std::pow(
      2.0 * std::pow(two_pi, -2.0 * alpha) / ((2.0 * alpha - 1.0) * tol),
      1.0 / (2.0 * alpha - 1.0));
  if (!(raw < 1.5 * static_cast<double>(kTruncationCap)))
    throw numeric_error(
        "spectral truncation exceeds the 1e7 cap; loosen the tolerance");
  std::int64_t k = static_cast<std::int64_t>(std::ceil(raw));
  if (k < 1) k = 1;
  while (spectral_tail_bound(alpha, static_cast<double>(k)) > tol) {
    ++k;
    if (k > kTruncationCap) break;
  }
  if (k > kTruncationCap)
    throw numeric_error(
        "spectral truncation exceeds the 1e7 cap; loosen the tolerance");
  return k;
}

SpectralCoefficients spectral_coefficients(double kappa, double alpha,
                                           double tol) {
  check_params(kappa, alpha, tol);
  const std::int64_t k_max = spectral_truncation_index(alpha, tol);
  SpectralCoefficients out;
  out.kappa = kappa;
  out.alpha = alpha;
  out.coefficients.resize(static_cast<std::size_t>(k_max) + 1);
  const double k2 = kappa * kappa;
  for (std::int64_t k = 0; k <= k_max; ++k) {
    const double w = two_pi * static_cast<double>(k);
    out.coefficients[static_cast<std::size_t>(k)] =
        std::pow(k2 + w * w, -alpha);
  }
  return out;
}

}  // namespace circmat
