// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#include <algorithm>
#include <cmath>

#include "circmat/common.hpp"
#include "circmat/kernels.hpp"

namespace circmat::kernels::detail {

namespace {

// Fractional part of step*k in turns, with the product error recovered via
// fma so the reduction stays exact to ~1 ulp for k up to ~2^40.
inline double phase_turns(double step, double k) {
  const double p = step * k;
  const double e = std::fma(step, k, -p);
  double f = (p - std::floor(p)) + e;
  if (f >= 1.0) f -= 1.0;
  if (f < 0.0) f += 1.0;
  return f;
}

constexpr std::size_t kAnchorBlock = 256;

}  // namespace

// Rotation recurrence within blocks, re-anchored from libm every
// kAnchorBlock steps to keep the drift below a few ulp.
void cos_ramp_scalar(double step_turns, std::int64_t k0, std::size_t count,
                     double* out) {
  const double s = step_turns - std::floor(step_turns);
  const double cd = std::cos(two_pi * s);
  const double sd = std::sin(two_pi * s);
  for (std::size_t b = 0; b < count; b += kAnchorBlock) {
    const std::size_t m = std::min(kAnchorBlock, count - b);
    const double f = phase_turns(s, static_cast<double>(k0) + static_cast<double>(b));
    double c = std::cos(two_pi * f);
    double sn = std::sin(two_pi * f);
    for (std::size_t i = 0; i < m; ++i) {
      out[b + i] = c;
      const double cn = c * cd - sn * sd;
      sn = sn * cd + c * sd;
      c = cn;
    }
  }
}

// Kahan-compensated; the series evaluator relies on this staying at a few ulp.
double dot_scalar(const double* a, const double* b, std::size_t count) {
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double term = a[i] * b[i] - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return sum;
}

void circulant_eigenvalues_scalar(const double* row, int n,
                                  const double* cos_tab, double* lambda) {
  const int h = n / 2;
  const int jmax = (n - 1) / 2;  // folded range, row[j] == row[n-j]
  const bool even = (n % 2) == 0;
  for (int k = 0; k <= h; ++k) {
    double s = 0.0;
    long long idx = k;
    for (int j = 1; j <= jmax; ++j) {
      s += row[j] * cos_tab[idx];
      idx += k;
      if (idx >= n) idx -= n;
    }
    double lam = row[0] + 2.0 * s;
    if (even) lam += (k % 2 == 0) ? row[h] : -row[h];
    lambda[k] = lam;
  }
  for (int k = h + 1; k < n; ++k) lambda[k] = lambda[n - k];
}

void forward_half_spectrum_scalar(const double* x, int n,
                                  const double* cos_tab, const double* sin_tab,
                                  double* re, double* im) {
  const int h = n / 2;
  for (int k = 0; k <= h; ++k) {
    double sr = 0.0;
    double si = 0.0;
    long long idx = 0;
    for (int j = 0; j < n; ++j) {
      sr += x[j] * cos_tab[idx];
      si += x[j] * sin_tab[idx];
      idx += k;
      if (idx >= n) idx -= n;
    }
    re[k] = sr;
    im[k] = -si;
  }
}

void inverse_half_spectrum_scalar(const double* re, const double* im, int n,
                                  const double* cos_tab, const double* sin_tab,
                                  double* out) {
  const int h = n / 2;
  const bool even = (n % 2) == 0;
  const int kmax = even ? h - 1 : h;
  const double inv_n = 1.0 / n;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    long long idx = j;
    for (int k = 1; k <= kmax; ++k) {
      s += re[k] * cos_tab[idx] - im[k] * sin_tab[idx];
      idx += j;
      if (idx >= n) idx -= n;
    }
    double v = re[0] + 2.0 * s;
    if (even) v += (j % 2 == 0) ? re[h] : -re[h];
    out[j] = v * inv_n;
  }
}

}  // namespace circmat::kernels::detail
