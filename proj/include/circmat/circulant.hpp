// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#pragma once

#include <span>
#include <vector>

namespace circmat {

// Symmetric circulant matrix on the n-point circular lattice, stored by its
// first row. first_row[k] == first_row[n-k] for k = 1..n-1.
struct CirculantMatrix {
  int n = 0;
  std::vector<double> first_row;

  // Validates n >= 3 and row symmetry; throws std::invalid_argument.
  static CirculantMatrix from_first_row(std::vector<double> row);
};

// Covariance as a function of lattice lag 0..n-1. Even under lag reflection,
// positive semidefinite on the cyclic group (DFT nonnegative up to
// 1e-9 * values[0]), and maximal at lag zero.
struct LagCovariance {
  int n = 0;
  std::vector<double> values;

  // Validates the invariants above (symmetry to 1e-12 * |values[0]|, then
  // mirrored exactly). Throws std::invalid_argument on shape violations and
  // numeric_error if the DFT check fails.
  static LagCovariance create(std::vector<double> values);

  CirculantMatrix to_circulant() const;
};

// Normalized circular lag ((k1-k2) mod n) / n in [0, 1). Covariances are even,
// so theta and 1-theta are interchangeable for callers.
double angular_lag(int k1, int k2, int n);

// Eigenvalues lambda_k = sum_j first_row[j] cos(2*pi*j*k/n) in natural
// frequency order k = 0..n-1 (real because of row symmetry).
std::vector<double> dft_eigenvalues(const CirculantMatrix& m);

// Solves m * x = rhs in the DFT domain. Throws numeric_error if any
// eigenvalue has magnitude below 1e-14 * max |eigenvalue|.
std::vector<double> circulant_solve(const CirculantMatrix& m,
                                    std::span<const double> rhs);

namespace detail {

struct TrigTables {
  std::vector<double> cos_t;
  std::vector<double> sin_t;
};
TrigTables trig_tables(int n);

// dft_eigenvalues for any symmetric even sequence (used by LagCovariance).
std::vector<double> eigenvalues_of_row(std::span<const double> row);

}  // namespace detail
}  // namespace circmat
