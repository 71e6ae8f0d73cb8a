// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#pragma once

#include <vector>

#include "circmat/car.hpp"
#include "circmat/matern.hpp"

namespace circmat {

// CAR(1) model whose covariance curve equals the alpha = 1 circular
// covariance at every lattice lag: a = 1/(2 cosh(kappa/n)),
// sigma2 = tanh(kappa/n)/(2 kappa). The match is exact: n log(beta) = kappa.
CarSpec match_car_to_matern_alpha1(double kappa, int n);

// CAR(2) model approximating the alpha = 2 curve: same a, with
// sigma2 = sinh(kappa/n)^2 / (2 n kappa^2 (1 + 2 cosh(kappa/n)^2)). The match
// carries the multiplicative deviation alpha2_discrepancy_factor.
CarSpec match_car_to_matern_alpha2(double kappa, int n);

// Reverse map. Order 1 (exact): alpha = 1, kappa = n log(beta),
// variance_scale = 2 n sigma2 log(beta) / sqrt(1 - 4 a^2). Order 2 uses the
// same kappa and fits variance_scale at lag zero; the covariance match is
// then approximate, like the forward direction.
MaternParams match_matern_to_car(const CarSpec& spec);

// (kappa/n) coth(kappa/n) >= 1. Multiplies the sinh(kappa/2) part of the
// matched alpha = 2 covariance; approaches 1 + kappa^2/(3 n^2) for large n.
double alpha2_discrepancy_factor(double kappa, double n);

// Taylor-matched neighbour weight a = n^2 / (kappa^2 + 2 n^2); agrees with
// the exact a up to O(1/n^2).
double besag_approx_a(double kappa, int n);

struct LagComparisonRow {
  int lag = 0;
  double theta = 0.0;
  double matern_cov = 0.0;
  double car_cov = 0.0;
  double abs_diff = 0.0;
  double matern_corr = 0.0;
  double car_corr = 0.0;
  double corr_diff = 0.0;
};

struct CurveComparison {
  double kappa = 0.0;
  int alpha = 0;
  int n = 0;
  CarSpec car;
  std::vector<LagComparisonRow> rows;
  double max_abs_diff = 0.0;
  double max_corr_diff = 0.0;
  double discrepancy_factor = 1.0;  // 1 for alpha = 1 (exact match)
};

// Per-lag comparison of the circular covariance curve against the matched
// CAR curve; correlations are covariances normalized by their lag-0 values.
CurveComparison compare_curves(double kappa, int alpha, int n);

}  // namespace circmat
