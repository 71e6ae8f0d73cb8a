// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#pragma once

#include "circmat/circulant.hpp"

namespace circmat {

// Conditional autoregressive model on the n-point circular lattice. Each site
// is conditionally Gaussian around a times its two neighbours (order 1) or a
// convolution of that kernel reaching two steps (order 2), with conditional
// variance sigma2.
struct CarSpec {
  int n = 0;
  int order = 1;     // 1 or 2
  double a = 0.0;    // neighbour weight, 0 < a < 1/2 strictly
  double sigma2 = 1.0;

  // Validates n (>= 3 for order 1, >= 5 for order 2), a in (0, 1/2), sigma2.
  static CarSpec create(int n, int order, double a, double sigma2);

  // Link parameter beta = (1 + sqrt(1 - 4 a^2)) / (2 a) > 1.
  double beta() const;
  // log(beta) = acosh(1 / (2 a)); same expression, evaluated stably.
  double log_beta() const;
  // Order-2 taps a1 = 2a/(2a^2+1), a2 = -a^2/(2a^2+1).
  double a1() const;
  double a2() const;
};

// Precision matrix (1/sigma2)(I - M) as a symmetric circulant. First row
// (1, -a, 0, ..., 0, -a)/sigma2 for order 1 and
// (1, -a1, -a2, 0, ..., 0, -a2, -a1)/sigma2 for order 2. All eigenvalues of
// a valid spec are strictly positive.
CirculantMatrix build_precision(const CarSpec& spec);

// Exact finite spectral sum for the covariance at the given lag. Serves as
// the module's internal oracle for the closed forms.
double car_covariance_spectral(const CarSpec& spec, int lag);

// Closed-form order-1 covariance at lag fraction theta = k/n:
//   sigma2 * cosh(n log(beta) (theta - 1/2))
//          / (tanh(log beta) * sinh(n log(beta)/2)).
double phi1_closed(double theta, const CarSpec& spec);

// Closed-form order-2 covariance (two-term cosh/sinh expression with front
// factor n * sigma2 * (2 a^2 + 1)).
double phi2_closed(double theta, const CarSpec& spec);

// Scaled covariance family
//   phi_m = (1/n) sum_k cos(2 pi lag (k-1)/n) / (1 - 2 a cos(2 pi (k-1)/n))^m.
// Exact finite sum for any m >= 1; the authoritative route for m = 3.
double phi_m_spectral(int m, int n, double a, int lag);

// Covariance tabulated at all lattice lags via the closed forms.
LagCovariance car_covariance_curve(const CarSpec& spec);

}  // namespace circmat
