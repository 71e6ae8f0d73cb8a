// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#pragma once

#include "circmat/circulant.hpp"

namespace circmat {

// Parameters of the circular covariance family on the unit-circumference
// circle: spectral density proportional to (kappa^2 + (2*pi*k)^2)^(-alpha).
struct MaternParams {
  double kappa = 1.0;           // inverse range, per unit circumference
  double alpha = 1.0;           // smoothness exponent, > 1/2
  double variance_scale = 1.0;  // multiplies the unit-spectral-scale covariance

  void validate() const;  // throws std::invalid_argument
};

// Spectral series sum_k (kappa^2+(2*pi*k)^2)^(-alpha) cos(2*pi*k*theta),
// scaled by variance_scale, with truncation error <= variance_scale * tol.
// theta is reduced modulo 1; the result is symmetric under theta -> 1-theta.
//
// For integer alpha in {1,2,3} the tail beyond the direct summation range is
// rearranged against the exactly summable series sum_k cos(2*pi*k*theta)/k^(2s)
// (Bernoulli polynomials), which reaches tight tolerances with a few thousand
// terms. Other alpha use direct summation under the analytic tail bound and
// inherit its 1e7-term cap.
double psi_series(double theta, const MaternParams& params, double tol = 1e-12);

// Closed form for alpha = 1: cosh(kappa*(theta-1/2)) / (2*kappa*sinh(kappa/2)),
// evaluated in exponentially scaled form so large kappa does not overflow.
double psi1_closed(double theta, double kappa);

// Closed form for alpha = 2 (two-term cosh/sinh expression).
double psi2_closed(double theta, double kappa);

// Closed form for alpha = 3, obtained by differentiating the alpha = 2 form:
// psi3 = -(1/(4*kappa)) d/dkappa psi2. With h = kappa/2 and u = theta - 1/2:
//   psi3(theta) = (h*sinh(h) + 3*cosh(h) + 3*sinh(h)/h + 2*h/sinh(h))
//                   / (512*h^4*sinh(h)^2) * cosh(kappa*u)
//               - (3*sinh(h) + 2*h*cosh(h)) / (256*h^4*sinh(h)^2)
//                   * u * sinh(kappa*u)
//               + u^2 * cosh(kappa*u) / (128*h^3*sinh(h));
// validated against psi_series to 1e-10 in the test suite.
double psi3_closed(double theta, double kappa);

// Covariance tabulated at lattice lags theta = k/n: closed form for
// alpha in {1,2,3}, series otherwise (series_tol applies to that path).
LagCovariance matern_curve(const MaternParams& params, int n,
                           double series_tol = 1e-12);

}  // namespace circmat
