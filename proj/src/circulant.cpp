// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#include "circmat/circulant.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "circmat/common.hpp"
#include "circmat/kernels.hpp"

namespace circmat {

namespace detail {

TrigTables trig_tables(int n) {
  TrigTables t;
  t.cos_t.resize(n);
  t.sin_t.resize(n);
  for (int m = 0; m < n; ++m) {
    const double a = two_pi * (static_cast<double>(m) / n);
    t.cos_t[m] = std::cos(a);
    t.sin_t[m] = std::sin(a);
  }
  return t;
}

std::vector<double> eigenvalues_of_row(std::span<const double> row) {
  const int n = static_cast<int>(row.size());
  const TrigTables t = trig_tables(n);
  std::vector<double> lambda(n);
  kernels::ops().circulant_eigenvalues(row.data(), n, t.cos_t.data(),
                                       lambda.data());
  return lambda;
}

}  // namespace detail

CirculantMatrix CirculantMatrix::from_first_row(std::vector<double> row) {
  const int n = static_cast<int>(row.size());
  if (n < 3) throw std::invalid_argument("circulant matrix needs n >= 3");
  for (int k = 1; k < n; ++k) {
    if (row[k] != row[n - k])
      throw std::invalid_argument("circulant first row is not symmetric");
  }
  return CirculantMatrix{n, std::move(row)};
}

LagCovariance LagCovariance::create(std::vector<double> values) {
  const int n = static_cast<int>(values.size());
  if (n < 3) throw std::invalid_argument("lag covariance needs n >= 3");
  const double scale = std::abs(values[0]);
  const double sym_tol = 1e-12 * scale;
  for (int k = 1; k < n; ++k) {
    if (std::abs(values[k] - values[n - k]) > sym_tol)
      throw std::invalid_argument("lag covariance is not even in the lag");
  }
  // Mirror exactly so downstream symmetry checks are exact.
  for (int k = 1; k < n - k; ++k) values[n - k] = values[k];
  for (int k = 1; k < n; ++k) {
    if (std::abs(values[k]) > scale * (1.0 + 1e-12))
      throw std::invalid_argument("lag covariance not maximal at lag zero");
  }
  const std::vector<double> lambda = detail::eigenvalues_of_row(values);
  for (double l : lambda) {
    if (l < -1e-9 * scale)
      throw numeric_error("lag covariance is not positive semidefinite");
  }
  return LagCovariance{n, std::move(values)};
}

CirculantMatrix LagCovariance::to_circulant() const {
  return CirculantMatrix{n, values};
}

double angular_lag(int k1, int k2, int n) {
  if (n < 3) throw std::invalid_argument("lattice needs n >= 3");
  if (k1 < 0 || k1 >= n || k2 < 0 || k2 >= n)
    throw std::invalid_argument("lattice index out of range");
  int d = (k1 - k2) % n;
  if (d < 0) d += n;
  return static_cast<double>(d) / n;
}

std::vector<double> dft_eigenvalues(const CirculantMatrix& m) {
  return detail::eigenvalues_of_row(m.first_row);
}

std::vector<double> circulant_solve(const CirculantMatrix& m,
                                    std::span<const double> rhs) {
  const int n = m.n;
  if (static_cast<int>(rhs.size()) != n)
    throw std::invalid_argument("rhs length does not match matrix size");

  const detail::TrigTables t = detail::trig_tables(n);
  std::vector<double> lambda(n);
  const kernels::Ops& k = kernels::ops();
  k.circulant_eigenvalues(m.first_row.data(), n, t.cos_t.data(), lambda.data());

  double max_abs = 0.0;
  for (double l : lambda) max_abs = std::max(max_abs, std::abs(l));
  for (double l : lambda) {
    if (std::abs(l) < 1e-14 * max_abs)
      throw numeric_error("circulant system is singular");
  }

  const int h = n / 2;
  std::vector<double> re(h + 1), im(h + 1);
  k.forward_half_spectrum(rhs.data(), n, t.cos_t.data(), t.sin_t.data(),
                          re.data(), im.data());
  for (int i = 0; i <= h; ++i) {
    re[i] /= lambda[i];
    im[i] /= lambda[i];
  }
  std::vector<double> x(n);
  k.inverse_half_spectrum(re.data(), im.data(), n, t.cos_t.data(),
                          t.sin_t.data(), x.data());
  return x;
}

}  // namespace circmat
