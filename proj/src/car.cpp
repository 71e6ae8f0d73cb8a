// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#include "circmat/car.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "circmat/common.hpp"

namespace circmat {

namespace {

using detail::scaled_cosh;
using detail::scaled_cosh_half;
using detail::scaled_sinh;
using detail::scaled_sinh_half;

double canonical_theta(double theta) {
  double t = theta - std::floor(theta);
  if (t >= 1.0) t -= 1.0;
  return t;
}

void check_lag(const CarSpec& spec, int lag) {
  if (lag < 0 || lag >= spec.n)
    throw std::invalid_argument("lag out of range");
}

}  // namespace

CarSpec CarSpec::create(int n, int order, double a, double sigma2) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("CAR order must be 1 or 2");
  const int n_min = order == 1 ? 3 : 5;
  if (n < n_min)
    throw std::invalid_argument(order == 1
                                    ? "order-1 CAR needs n >= 3"
                                    : "order-2 CAR needs n >= 5 for distinct "
                                      "second neighbours");
  if (!(a > 0.0) || !(a < 0.5))
    throw std::invalid_argument("neighbour weight a must lie in (0, 1/2)");
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("conditional variance must be positive");
  return CarSpec{n, order, a, sigma2};
}

double CarSpec::beta() const {
  return (1.0 + std::sqrt(1.0 - 4.0 * a * a)) / (2.0 * a);
}

double CarSpec::log_beta() const { return std::acosh(1.0 / (2.0 * a)); }

double CarSpec::a1() const { return 2.0 * a / (2.0 * a * a + 1.0); }

double CarSpec::a2() const { return -a * a / (2.0 * a * a + 1.0); }

CirculantMatrix build_precision(const CarSpec& spec) {
  std::vector<double> row(static_cast<std::size_t>(spec.n), 0.0);
  const double inv_s2 = 1.0 / spec.sigma2;
  row[0] = inv_s2;
  if (spec.order == 1) {
    row[1] = -spec.a * inv_s2;
    row[static_cast<std::size_t>(spec.n - 1)] = row[1];
  } else {
    row[1] = -spec.a1() * inv_s2;
    row[2] = -spec.a2() * inv_s2;
    row[static_cast<std::size_t>(spec.n - 1)] = row[1];
    row[static_cast<std::size_t>(spec.n - 2)] = row[2];
  }
  return CirculantMatrix::from_first_row(std::move(row));
}

double car_covariance_spectral(const CarSpec& spec, int lag) {
  check_lag(spec, lag);
  const int n = spec.n;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double w = two_pi * static_cast<double>(k) / n;
    const double denom = 1.0 - 2.0 * spec.a * std::cos(w);
    const double c = std::cos(w * lag);
    sum += spec.order == 1 ? c / denom : c / (denom * denom);
  }
  const double front = spec.order == 1
                           ? spec.sigma2 / n
                           : spec.sigma2 * (2.0 * spec.a * spec.a + 1.0) / n;
  return front * sum;
}

double phi1_closed(double theta, const CarSpec& spec) {
  if (spec.order != 1)
    throw std::invalid_argument("phi1_closed needs an order-1 spec");
  const double u = canonical_theta(theta) - 0.5;
  const double g = spec.n * spec.log_beta();
  // cosh(g u) / sinh(g/2) with both sides scaled by e^(-g/2)
  const double cu = scaled_cosh(g * u, 0.5 * g);
  const double sh = scaled_sinh_half(g);
  return spec.sigma2 * cu / (std::tanh(spec.log_beta()) * sh);
}

double phi2_closed(double theta, const CarSpec& spec) {
  if (spec.order != 2)
    throw std::invalid_argument("phi2_closed needs an order-2 spec");
  const double u = canonical_theta(theta) - 0.5;
  const double n = spec.n;
  const double lb = spec.log_beta();
  const double g = n * lb;
  const double th = std::tanh(lb);
  const double cu = scaled_cosh(g * u, 0.5 * g);
  const double su = scaled_sinh(g * u, 0.5 * g);
  const double sh = scaled_sinh_half(g);
  const double ch = scaled_cosh_half(g);
  const double phi2 =
      n * (0.5 * ch + (1.0 / n) / th * sh) * cu / (th * th * sh * sh) -
      n * u * su / (th * th * sh);
  return spec.sigma2 * (2.0 * spec.a * spec.a + 1.0) * phi2;
}

double phi_m_spectral(int m, int n, double a, int lag) {
  if (m < 1) throw std::invalid_argument("phi_m needs m >= 1");
  if (n < 3) throw std::invalid_argument("lattice needs n >= 3");
  if (!(a > 0.0) || !(a < 0.5))
    throw std::invalid_argument("neighbour weight a must lie in (0, 1/2)");
  if (lag < 0 || lag >= n) throw std::invalid_argument("lag out of range");
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double w = two_pi * static_cast<double>(k) / n;
    const double denom = 1.0 - 2.0 * a * std::cos(w);
    sum += std::cos(w * lag) / std::pow(denom, m);
  }
  return sum / n;
}

LagCovariance car_covariance_curve(const CarSpec& spec) {
  const int n = spec.n;
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int k = 0; k <= n / 2; ++k) {
    const double theta = static_cast<double>(k) / n;
    const double v = spec.order == 1 ? phi1_closed(theta, spec)
                                     : phi2_closed(theta, spec);
    values[static_cast<std::size_t>(k)] = v;
    if (k > 0 && k < n - k) values[static_cast<std::size_t>(n - k)] = v;
  }
  return LagCovariance::create(std::move(values));
}

}  // namespace circmat
