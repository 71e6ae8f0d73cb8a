// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

#include <stdexcept>

#include "circmat/kernels.hpp"

namespace circmat::kernels {

namespace detail {

void cos_ramp_scalar(double, std::int64_t, std::size_t, double*);
double dot_scalar(const double*, const double*, std::size_t);
void circulant_eigenvalues_scalar(const double*, int, const double*, double*);
void forward_half_spectrum_scalar(const double*, int, const double*,
                                  const double*, double*, double*);
void inverse_half_spectrum_scalar(const double*, const double*, int,
                                  const double*, const double*, double*);

#ifdef CIRCMAT_HAVE_AVX2
void cos_ramp_avx2(double, std::int64_t, std::size_t, double*);
double dot_avx2(const double*, const double*, std::size_t);
void circulant_eigenvalues_avx2(const double*, int, const double*, double*);
void forward_half_spectrum_avx2(const double*, int, const double*,
                                const double*, double*, double*);
void inverse_half_spectrum_avx2(const double*, const double*, int,
                                const double*, const double*, double*);
#endif

}  // namespace detail

namespace {

constexpr Ops kScalarOps = {
    "scalar",
    detail::cos_ramp_scalar,
    detail::dot_scalar,
    detail::circulant_eigenvalues_scalar,
    detail::forward_half_spectrum_scalar,
    detail::inverse_half_spectrum_scalar,
};

#ifdef CIRCMAT_HAVE_AVX2
constexpr Ops kAvx2Ops = {
    "avx2",
    detail::cos_ramp_avx2,
    detail::dot_avx2,
    detail::circulant_eigenvalues_avx2,
    detail::forward_half_spectrum_avx2,
    detail::inverse_half_spectrum_avx2,
};
#endif

bool cpu_has_avx2() {
#if defined(CIRCMAT_HAVE_AVX2) && (defined(__x86_64__) || defined(_M_X64))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect_backend() {
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

Backend& mutable_backend() {
  static Backend b = detect_backend();
  return b;
}

}  // namespace

bool available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return cpu_has_avx2();
  }
  return false;
}

const Ops& ops_for(Backend b) {
  if (!available(b)) throw std::invalid_argument("kernel backend unavailable");
  switch (b) {
    case Backend::scalar:
      return kScalarOps;
    case Backend::avx2:
#ifdef CIRCMAT_HAVE_AVX2
      return kAvx2Ops;
#else
      break;
#endif
  }
  throw std::invalid_argument("kernel backend unavailable");
}

const Ops& ops() { return ops_for(mutable_backend()); }

Backend active_backend() { return mutable_backend(); }

void set_backend(Backend b) {
  if (!available(b)) throw std::invalid_argument("kernel backend unavailable");
  mutable_backend() = b;
}

}  // namespace circmat::kernels
