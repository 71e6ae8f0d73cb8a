// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#include "circmat/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "circmat/common.hpp"

namespace circmat {

namespace {

void check_kappa_n(double kappa, int n, int n_min) {
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  if (n < n_min)
    throw std::invalid_argument("lattice too small for this matching");
}

}  // namespace

CarSpec match_car_to_matern_alpha1(double kappa, int n) {
  check_kappa_n(kappa, n, 3);
  const double t = kappa / n;
  const double a = 1.0 / (2.0 * std::cosh(t));
  const double sigma2 = std::tanh(t) / (2.0 * kappa);
  return CarSpec::create(n, 1, a, sigma2);
}

CarSpec match_car_to_matern_alpha2(double kappa, int n) {
  check_kappa_n(kappa, n, 5);
  const double t = kappa / n;
  const double a = 1.0 / (2.0 * std::cosh(t));
  const double sh = std::sinh(t);
  const double ch = std::cosh(t);
  const double sigma2 =
      sh * sh / (2.0 * n * kappa * kappa * (1.0 + 2.0 * ch * ch));
  return CarSpec::create(n, 2, a, sigma2);
}

MaternParams match_matern_to_car(const CarSpec& spec) {
  const double lb = spec.log_beta();
  const double kappa = spec.n * lb;
  MaternParams params;
  params.kappa = kappa;
  if (spec.order == 1) {
    params.alpha = 1.0;
    params.variance_scale =
        2.0 * spec.n * spec.sigma2 * lb / std::sqrt(1.0 - 4.0 * spec.a * spec.a);
  } else {
    params.alpha = 2.0;
    params.variance_scale = 1.0;
    const double car0 = phi2_closed(0.0, spec);
    params.variance_scale = car0 / psi2_closed(0.0, kappa);
  }
  params.validate();
  return params;
}

double alpha2_discrepancy_factor(double kappa, double n) {
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  if (!(n >= 1.0)) throw std::invalid_argument("n must be at least 1");
  const double x = kappa / n;
  return x / std::tanh(x);
}

double besag_approx_a(double kappa, int n) {
  check_kappa_n(kappa, n, 3);
  const double n2 = static_cast<double>(n) * n;
  return n2 / (kappa * kappa + 2.0 * n2);
}

CurveComparison compare_curves(double kappa, int alpha, int n) {
  if (alpha != 1 && alpha != 2)
    throw std::invalid_argument("curve comparison supports alpha 1 or 2");
  CurveComparison cmp;
  cmp.kappa = kappa;
  cmp.alpha = alpha;
  cmp.n = n;
  cmp.car = alpha == 1 ? match_car_to_matern_alpha1(kappa, n)
                       : match_car_to_matern_alpha2(kappa, n);
  cmp.discrepancy_factor =
      alpha == 1 ? 1.0 : alpha2_discrepancy_factor(kappa, n);

  const MaternParams params{kappa, static_cast<double>(alpha), 1.0};
  const LagCovariance matern = matern_curve(params, n);
  const LagCovariance car = car_covariance_curve(cmp.car);
  const double m0 = matern.values[0];
  const double c0 = car.values[0];

  cmp.rows.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    LagComparisonRow& row = cmp.rows[static_cast<std::size_t>(k)];
    row.lag = k;
    row.theta = static_cast<double>(k) / n;
    row.matern_cov = matern.values[static_cast<std::size_t>(k)];
    row.car_cov = car.values[static_cast<std::size_t>(k)];
    row.abs_diff = std::abs(row.matern_cov - row.car_cov);
    row.matern_corr = row.matern_cov / m0;
    row.car_corr = row.car_cov / c0;
    row.corr_diff = std::abs(row.matern_corr - row.car_corr);
    cmp.max_abs_diff = std::max(cmp.max_abs_diff, row.abs_diff);
    cmp.max_corr_diff = std::max(cmp.max_corr_diff, row.corr_diff);
  }
  return cmp;
}

}  // namespace circmat
