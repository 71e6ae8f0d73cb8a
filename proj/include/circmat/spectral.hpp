// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#pragma once

#include <cstdint>
#include <vector>

namespace circmat {

// Spectral coefficients c_k = (kappa^2 + (2*pi*k)^2)^(-alpha) of the circular
// covariance operator, k = 0..K. Strictly decreasing in k, all positive.
struct SpectralCoefficients {
  double kappa = 0.0;
  double alpha = 0.0;
  std::vector<double> coefficients;

  std::int64_t max_index() const {
    return static_cast<std::int64_t>(coefficients.size()) - 1;
  }
};

// Analytic bound on the discarded tail sum_{|k|>K} c_k:
//   2 * (2*pi)^(-2*alpha) * K^(1-2*alpha) / (2*alpha - 1).
double spectral_tail_bound(double alpha, double truncation);

// Smallest K whose tail bound is <= tol. Hard cap 10^7; throws numeric_error
// beyond it and std::invalid_argument for alpha <= 1/2.
std::int64_t spectral_truncation_index(double alpha, double tol);

SpectralCoefficients spectral_coefficients(double kappa, double alpha,
                                           double tol = 1e-12);

}  // namespace circmat
