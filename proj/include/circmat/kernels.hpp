// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#pragma once

#include <cstddef>
#include <cstdint>

namespace circmat::kernels {

// Data-parallel inner loops behind the lattice transforms and the spectral
// series. Every operation has a scalar reference implementation and, on
// x86-64, an AVX2 variant; the active backend is chosen once at startup from
// CPU capabilities and can be overridden (mainly by the equivalence tests).
enum class Backend { scalar = 0, avx2 = 1 };

struct Ops {
  const char* name;

  // out[i] = cos(2*pi * step_turns * (k0 + i)), i = 0..count-1.
  // step_turns is a frequency in turns; k0 may be large (up to ~2^40).
  void (*cos_ramp)(double step_turns, std::int64_t k0, std::size_t count,
                   double* out);

  double (*dot)(const double* a, const double* b, std::size_t count);

  // Eigenvalues of the symmetric circulant with the given first row:
  //   lambda[k] = sum_j row[j] * cos(2*pi*j*k/n),  k = 0..n-1.
  // cos_tab[m] = cos(2*pi*m/n), m = 0..n-1.
  void (*circulant_eigenvalues)(const double* row, int n,
                                const double* cos_tab, double* lambda);

  // Forward DFT of a real vector, Hermitian half only (k = 0..n/2):
  //   re[k] = sum_j x[j] cos(2*pi*j*k/n),  im[k] = -sum_j x[j] sin(2*pi*j*k/n).
  void (*forward_half_spectrum)(const double* x, int n, const double* cos_tab,
                                const double* sin_tab, double* re, double* im);

  // Inverse of forward_half_spectrum (includes the 1/n factor):
  //   out[j] = (1/n) * (re[0] + 2*sum_{0<k<ceil(n/2)} (re[k] cos - im[k] sin)
  //                     + (n even ? (-1)^j re[n/2] : 0)).
  void (*inverse_half_spectrum)(const double* re, const double* im, int n,
                                const double* cos_tab, const double* sin_tab,
                                double* out);
};

bool available(Backend b);
const Ops& ops_for(Backend b);  // throws std::invalid_argument if unavailable
const Ops& ops();               // active backend
Backend active_backend();
void set_backend(Backend b);    // throws std::invalid_argument if unavailable

}  // namespace circmat::kernels
