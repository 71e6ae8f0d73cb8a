// Copyright (c) 2026 The circmat Authors
// Licensed under the Apache License Version 2.0. See LICENSE file in the project root.

// AVX2 variants of the kernel table. Compiled with -mavx2 -mfma; only
// dispatched to when the CPU reports both features at runtime.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "circmat/common.hpp"
#include "circmat/kernels.hpp"

namespace circmat::kernels::detail {

namespace {

inline double phase_turns(double step, double k) {
  const double p = step * k;
  const double e = std::fma(step, k, -p);
  double f = (p - std::floor(p)) + e;
  if (f >= 1.0) f -= 1.0;
  if (f < 0.0) f += 1.0;
  return f;
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

// Index vector stepping m*k mod n per iteration. Values stay in [0, n), so a
// single conditional subtract handles the wrap.
struct ModIndex {
  __m128i idx;
  __m128i step;
  __m128i vn;

  ModIndex(long long first, long long stride, int n) {
    alignas(16) int v[4];
    long long t = first % n;
    for (int l = 0; l < 4; ++l) {
      v[l] = static_cast<int>(t);
      t += stride;
      t %= n;
    }
    idx = _mm_load_si128(reinterpret_cast<const __m128i*>(v));
    step = _mm_set1_epi32(static_cast<int>((4 * stride) % n));
    vn = _mm_set1_epi32(n);
  }

  void advance() {
    idx = _mm_add_epi32(idx, step);
    const __m128i lt = _mm_cmplt_epi32(idx, vn);
    idx = _mm_sub_epi32(idx, _mm_andnot_si128(lt, vn));
  }
};

constexpr std::size_t kAnchorBlock = 256;

}  // namespace

void cos_ramp_avx2(double step_turns, std::int64_t k0, std::size_t count,
                   double* out) {
  const double s = step_turns - std::floor(step_turns);
  double s4 = 4.0 * s;
  s4 -= std::floor(s4);
  const __m256d cd4 = _mm256_set1_pd(std::cos(two_pi * s4));
  const __m256d sd4 = _mm256_set1_pd(std::sin(two_pi * s4));
  for (std::size_t b = 0; b < count; b += kAnchorBlock) {
    const std::size_t m = std::min(kAnchorBlock, count - b);
    alignas(32) double ca[4];
    alignas(32) double sa[4];
    for (int l = 0; l < 4; ++l) {
      const double f =
          phase_turns(s, static_cast<double>(k0) + static_cast<double>(b + l));
      ca[l] = std::cos(two_pi * f);
      sa[l] = std::sin(two_pi * f);
    }
    __m256d c = _mm256_load_pd(ca);
    __m256d sn = _mm256_load_pd(sa);
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
      _mm256_storeu_pd(out + b + i, c);
      const __m256d cn =
          _mm256_fnmadd_pd(sn, sd4, _mm256_mul_pd(c, cd4));
      sn = _mm256_fmadd_pd(c, sd4, _mm256_mul_pd(sn, cd4));
      c = cn;
    }
    for (; i < m; ++i) {
      const double f = phase_turns(
          s, static_cast<double>(k0) + static_cast<double>(b + i));
      out[b + i] = std::cos(two_pi * f);
    }
  }
}

double dot_avx2(const double* a, const double* b, std::size_t count) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= count; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < count; ++i) s += a[i] * b[i];
  return s;
}

void circulant_eigenvalues_avx2(const double* row, int n, const double* cos_tab,
                                double* lambda) {
  const int h = n / 2;
  const int jmax = (n - 1) / 2;
  const bool even = (n % 2) == 0;
  for (int k = 0; k <= h; ++k) {
    double s = 0.0;
    int j = 1;
    if (jmax - j >= 3) {
      ModIndex mi(k, k, n);
      __m256d acc = _mm256_setzero_pd();
      for (; j + 3 <= jmax; j += 4) {
        const __m256d tv = _mm256_i32gather_pd(cos_tab, mi.idx, 8);
        acc = _mm256_fmadd_pd(tv, _mm256_loadu_pd(row + j), acc);
        mi.advance();
      }
      s = hsum(acc);
    }
    long long idx = static_cast<long long>(j) * k % n;
    for (; j <= jmax; ++j) {
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

void forward_half_spectrum_avx2(const double* x, int n, const double* cos_tab,
                                const double* sin_tab, double* re, double* im) {
  const int h = n / 2;
  for (int k = 0; k <= h; ++k) {
    double sr = 0.0;
    double si = 0.0;
    int j = 0;
    if (n >= 4) {
      ModIndex mi(0, k, n);
      __m256d accr = _mm256_setzero_pd();
      __m256d acci = _mm256_setzero_pd();
      for (; j + 3 < n; j += 4) {
        const __m256d xv = _mm256_loadu_pd(x + j);
        accr = _mm256_fmadd_pd(xv, _mm256_i32gather_pd(cos_tab, mi.idx, 8), accr);
        acci = _mm256_fmadd_pd(xv, _mm256_i32gather_pd(sin_tab, mi.idx, 8), acci);
        mi.advance();
      }
      sr = hsum(accr);
      si = hsum(acci);
    }
    long long idx = static_cast<long long>(j) * k % n;
    for (; j < n; ++j) {
      sr += x[j] * cos_tab[idx];
      si += x[j] * sin_tab[idx];
      idx += k;
      if (idx >= n) idx -= n;
    }
    re[k] = sr;
    im[k] = -si;
  }
}

void inverse_half_spectrum_avx2(const double* re, const double* im, int n,
                                const double* cos_tab, const double* sin_tab,
                                double* out) {
  const int h = n / 2;
  const bool even = (n % 2) == 0;
  const int kmax = even ? h - 1 : h;
  const double inv_n = 1.0 / n;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    int k = 1;
    if (kmax - k >= 3) {
      ModIndex mi(j, j, n);
      __m256d acc = _mm256_setzero_pd();
      for (; k + 3 <= kmax; k += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(re + k),
                              _mm256_i32gather_pd(cos_tab, mi.idx, 8), acc);
        acc = _mm256_fnmadd_pd(_mm256_loadu_pd(im + k),
                               _mm256_i32gather_pd(sin_tab, mi.idx, 8), acc);
        mi.advance();
      }
      s = hsum(acc);
    }
    long long idx = static_cast<long long>(k) * j % n;
    for (; k <= kmax; ++k) {
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
