// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#include "circmat/matern.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "circmat/common.hpp"
#include "circmat/kernels.hpp"
#include "circmat/spectral.hpp"

namespace circmat {

namespace {

using detail::scaled_cosh;
using detail::scaled_cosh_half;
using detail::scaled_sinh;
using detail::scaled_sinh_half;

double canonical_theta(double theta) {
  double t = theta - std::floor(theta);
  if (t >= 1.0) t -= 1.0;  // theta == -0.0 and similar edge cases
  return t;
}

// Bernoulli numbers B_0..B_30 (odd indices above 1 are zero).
constexpr double kBernoulli[31] = {
    1.0, -0.5, 1.0 / 6.0, 0.0, -1.0 / 30.0, 0.0, 1.0 / 42.0, 0.0,
    -1.0 / 30.0, 0.0, 5.0 / 66.0, 0.0, -691.0 / 2730.0, 0.0, 7.0 / 6.0, 0.0,
    -3617.0 / 510.0, 0.0, 43867.0 / 798.0, 0.0, -174611.0 / 330.0, 0.0,
    854513.0 / 138.0, 0.0, -236364091.0 / 2730.0, 0.0, 8553103.0 / 6.0, 0.0,
    -23749461029.0 / 870.0, 0.0, 8615841276005.0 / 14322.0};

constexpr int kMaxBernoulliOrder = 30;

double binom(int n, int r) {
  double v = 1.0;
  for (int i = 1; i <= r; ++i) v *= static_cast<double>(n - r + i) / i;
  return v;
}

// B_n(theta) = sum_r binom(n,r) B_r theta^(n-r), Horner over ascending r.
double bernoulli_poly(int n, double theta) {
  double acc = 0.0;
  for (int r = 0; r <= n; ++r) acc = acc * theta + binom(n, r) * kBernoulli[r];
  return acc;
}

// S_{2s}(theta) = sum_{k>=1} cos(2*pi*k*theta) / k^(2s)
//              = (-1)^(s+1) (2*pi)^(2s) B_{2s}(theta) / (2 * (2s)!).
double cosine_zeta_sum(int two_s, double theta) {
  double fact = 1.0;
  for (int i = 2; i <= two_s; ++i) fact *= i;
  const double sign = (two_s / 2) % 2 == 1 ? 1.0 : -1.0;
  return sign * std::pow(two_pi, two_s) * bernoulli_poly(two_s, theta) /
         (2.0 * fact);
}

// Direct truncated summation under the analytic tail bound; any alpha > 1/2.
double psi_direct(double theta, double kappa, double alpha, double tol) {
  const std::int64_t k_max = spectral_truncation_index(alpha, tol);
  const double k2 = kappa * kappa;
  constexpr std::int64_t kBlock = 8192;
  std::vector<double> cosbuf(static_cast<std::size_t>(
      std::min<std::int64_t>(kBlock, k_max)));
  std::vector<double> wbuf(cosbuf.size());
  const kernels::Ops& ops = kernels::ops();
  double sum = 0.0;
  double comp = 0.0;
  for (std::int64_t k0 = 1; k0 <= k_max; k0 += kBlock) {
    const std::int64_t count = std::min<std::int64_t>(kBlock, k_max - k0 + 1);
    ops.cos_ramp(theta, k0, static_cast<std::size_t>(count), cosbuf.data());
    for (std::int64_t i = 0; i < count; ++i) {
      const double w = two_pi * static_cast<double>(k0 + i);
      wbuf[static_cast<std::size_t>(i)] = std::pow(k2 + w * w, -alpha);
    }
    const double partial =
        ops.dot(cosbuf.data(), wbuf.data(), static_cast<std::size_t>(count));
    const double term = partial - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return std::pow(k2, -alpha) + 2.0 * sum;
}

// Integer-order evaluation: direct head k <= K plus the binomially expanded
// tail, each expansion order summed exactly through cosine_zeta_sum. The
// error budget is tol scaled down by the curve magnitude (large kappa makes
// psi_m itself tiny), so the result keeps relative accuracy there too. The
// expansion order J is capped so the rearrangement noise (roughly
// eps * (kappa/2pi)^(2j)) stays inside that budget.
double psi_integer(double theta, double kappa, int m, double tol) {
  const double ratio2 = (kappa / two_pi) * (kappa / two_pi);
  const double base = std::pow(two_pi, -2.0 * m);
  constexpr double kNoiseUnit = 5e-15;
  constexpr std::int64_t kCap = 10'000'000;

  // psi_m(0) ~ kappa^(-2m) + 2*A_m*kappa^(1-2m) with A_m the half-line
  // integral of (1+y^2)^(-m) over 2*pi.
  constexpr double kMagnitude[4] = {0.0, 0.5, 0.25, 3.0 / 16.0};
  const double scale =
      std::min(1.0, std::pow(kappa, -2.0 * m) +
                        2.0 * kMagnitude[m] * std::pow(kappa, 1.0 - 2.0 * m));
  const double budget = tol * scale;

  const std::int64_t k_floor =
      std::max<std::int64_t>(24, static_cast<std::int64_t>(std::ceil(kappa)));

  const auto k_for_target = [&](int j_cnt, double target) {
    const int p = 2 * (m + j_cnt);  // tail decay exponent
    // 2 binom(m+J-1, J) kappa^(2J) (2pi)^(-2(m+J)) K^(1-2(m+J)) / (2(m+J)-1)
    const double coeff = 2.0 * binom(m + j_cnt - 1, j_cnt) *
                         std::pow(ratio2, j_cnt) * base / (p - 1);
    const double k_needed = std::pow(coeff / target, 1.0 / (p - 1));
    if (!(k_needed < 1.5 * static_cast<double>(kCap)))
      return std::int64_t{2} * kCap;  // beyond the cap, rejected later
    return std::max<std::int64_t>(
        k_floor, static_cast<std::int64_t>(std::ceil(k_needed)) + 1);
  };

  int best_j = 0;
  std::int64_t best_k = -1;
  double noise = 0.0;
  double mult = base;  // binom(m+j-1, j) * ratio2^j * base at j = 0
  const int j_limit = (kMaxBernoulliOrder - 2 * m) / 2 + 1;
  for (int j_count = 1; j_count <= j_limit; ++j_count) {
    noise += mult * kNoiseUnit;
    if (noise > 0.5 * budget) {
      if (best_j == 0) {
        // Budget below the rounding floor of the rearrangement; run the
        // single-term expansion with truncation matched to its own noise.
        best_j = 1;
        best_k = k_for_target(1, std::max(0.5 * budget, base * kNoiseUnit));
      }
      break;
    }
    const std::int64_t k_req = k_for_target(j_count, 0.5 * budget);
    if (best_k < 0 || k_req < best_k) {
      best_j = j_count;
      best_k = k_req;
    }
    mult = binom(m + j_count - 1, j_count) * std::pow(ratio2, j_count) * base;
  }
  if (best_k < 0 || best_k > kCap)
    throw numeric_error("series tolerance unreachable for these parameters");

  const int j_count = best_j;
  const std::int64_t k_max = best_k;
  const std::size_t count = static_cast<std::size_t>(k_max);

  const kernels::Ops& ops = kernels::ops();
  std::vector<double> cosbuf(count);
  ops.cos_ramp(theta, 1, count, cosbuf.data());

  // Exact head.
  const double k2 = kappa * kappa;
  std::vector<double> weights(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double w = two_pi * static_cast<double>(i + 1);
    double d = 1.0 / (k2 + w * w);
    double v = d;
    for (int q = 1; q < m; ++q) v *= d;
    weights[i] = v;
  }
  double result = std::pow(k2, -m) + 2.0 * ops.dot(cosbuf.data(), weights.data(), count);

  // Tail corrections: T_{2s} = S_{2s}(theta) - sum_{k<=K} cos(2*pi*k*theta)/k^(2s).
  std::vector<double> inv_k2(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double k = static_cast<double>(i + 1);
    inv_k2[i] = 1.0 / (k * k);
  }
  std::vector<double> pw(count);
  for (std::size_t i = 0; i < count; ++i) {
    double v = inv_k2[i];
    for (int q = 1; q < m; ++q) v *= inv_k2[i];
    pw[i] = v;
  }
  double kappa_pow = 1.0;  // kappa^(2j)
  for (int j = 0; j < j_count; ++j) {
    const int s2 = 2 * (m + j);
    const double partial = ops.dot(cosbuf.data(), pw.data(), count);
    const double t_tail = cosine_zeta_sum(s2, theta) - partial;
    const double c_j = (j % 2 == 0 ? 1.0 : -1.0) * binom(m + j - 1, j);
    result += 2.0 * c_j * kappa_pow * std::pow(two_pi, -s2) * t_tail;
    kappa_pow *= k2;
    for (std::size_t i = 0; i < count; ++i) pw[i] *= inv_k2[i];
  }
  return result;
}

bool integer_alpha(double alpha, int* m) {
  const double r = std::round(alpha);
  if (std::abs(alpha - r) < 1e-9 && r >= 1.0 && r <= 3.0) {
    *m = static_cast<int>(r);
    return true;
  }
  return false;
}

void check_kappa(double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
}

}  // namespace

void MaternParams::validate() const {
  check_kappa(kappa);
  if (!(alpha > 0.5))
    throw std::invalid_argument(
        "smoothness exponent alpha must exceed 1/2 (series diverges)");
  if (!(variance_scale > 0.0))
    throw std::invalid_argument("variance scale must be positive");
}

double psi_series(double theta, const MaternParams& params, double tol) {
  params.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const double t = canonical_theta(theta);
  int m = 0;
  const double value = integer_alpha(params.alpha, &m)
                           ? psi_integer(t, params.kappa, m, tol)
                           : psi_direct(t, params.kappa, params.alpha, tol);
  return params.variance_scale * value;
}

double psi1_closed(double theta, double kappa) {
  check_kappa(kappa);
  const double u = canonical_theta(theta) - 0.5;
  const double h = 0.5 * kappa;
  const double sh = scaled_sinh_half(kappa);        // sinh(h) e^-h
  const double cu = scaled_cosh(kappa * u, h);      // cosh(kappa u) e^-h
  return cu / (2.0 * kappa * sh);
}

double psi2_closed(double theta, double kappa) {
  check_kappa(kappa);
  const double u = canonical_theta(theta) - 0.5;
  const double h = 0.5 * kappa;
  const double sh = scaled_sinh_half(kappa);
  const double ch = scaled_cosh_half(kappa);
  const double cu = scaled_cosh(kappa * u, h);
  const double su = scaled_sinh(kappa * u, h);
  const double k3 = kappa * kappa * kappa;
  return (sh + h * ch) * cu / (4.0 * k3 * sh * sh) -
         u * su / (4.0 * kappa * kappa * sh);
}

double psi3_closed(double theta, double kappa) {
  check_kappa(kappa);
  const double u = canonical_theta(theta) - 0.5;
  const double h = 0.5 * kappa;
  const double q = std::exp(-kappa);
  const double sh = scaled_sinh_half(kappa);
  const double ch = scaled_cosh_half(kappa);
  const double cu = scaled_cosh(kappa * u, h);
  const double su = scaled_sinh(kappa * u, h);
  const double h3 = h * h * h;
  const double h4 = h3 * h;
  const double c1 = (h * sh + 3.0 * ch + 3.0 * sh / h + 2.0 * h * q / sh) /
                    (512.0 * h4 * sh * sh);
  const double c2 = -(3.0 * sh + 2.0 * h * ch) / (256.0 * h4 * sh * sh);
  const double c3 = 1.0 / (128.0 * h3 * sh);
  return c1 * cu + c2 * u * su + c3 * u * u * cu;
}

LagCovariance matern_curve(const MaternParams& params, int n,
                           double series_tol) {
  params.validate();
  if (n < 3) throw std::invalid_argument("lattice needs n >= 3");
  int m = 0;
  const bool closed = integer_alpha(params.alpha, &m);
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int k = 0; k <= n / 2; ++k) {
    const double theta = static_cast<double>(k) / n;
    double v;
    if (closed) {
      v = m == 1   ? psi1_closed(theta, params.kappa)
          : m == 2 ? psi2_closed(theta, params.kappa)
                   : psi3_closed(theta, params.kappa);
      v *= params.variance_scale;
    } else {
      v = psi_series(theta, params, series_tol);
    }
    values[static_cast<std::size_t>(k)] = v;
    if (k > 0 && k < n - k) values[static_cast<std::size_t>(n - k)] = v;
  }
  return LagCovariance::create(std::move(values));
}

}  // namespace circmat
