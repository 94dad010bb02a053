// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

// Compiled with -mavx2 -mfma. Only reached through dispatch after a CPUID check.

#include <immintrin.h>

#include "ceg/simd.hpp"

namespace ceg::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

// Widens 8 floats into two 4-lane doubles.
inline void widen(const float* p, __m256d& lo, __m256d& hi) {
  const __m256 v = _mm256_loadu_ps(p);
  lo = _mm256_cvtps_pd(_mm256_castps256_ps128(v));
  hi = _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1));
}

}  // namespace

double dot(std::span<const float> a, std::span<const float> b) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d a0, a1, b0, b1;
    widen(a.data() + i, a0, a1);
    widen(b.data() + i, b0, b1);
    acc0 = _mm256_fmadd_pd(a0, b0, acc0);
    acc1 = _mm256_fmadd_pd(a1, b1, acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return acc;
}

double squared_norm(std::span<const float> a) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d a0, a1;
    widen(a.data() + i, a0, a1);
    acc0 = _mm256_fmadd_pd(a0, a0, acc0);
    acc1 = _mm256_fmadd_pd(a1, a1, acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += static_cast<double>(a[i]) * static_cast<double>(a[i]);
  return acc;
}

DotNorms dot_norms(std::span<const float> a, std::span<const float> b) {
  const std::size_t n = a.size();
  __m256d ab = _mm256_setzero_pd();
  __m256d aa = _mm256_setzero_pd();
  __m256d bb = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d a0, a1, b0, b1;
    widen(a.data() + i, a0, a1);
    widen(b.data() + i, b0, b1);
    ab = _mm256_fmadd_pd(a1, b1, _mm256_fmadd_pd(a0, b0, ab));
    aa = _mm256_fmadd_pd(a1, a1, _mm256_fmadd_pd(a0, a0, aa));
    bb = _mm256_fmadd_pd(b1, b1, _mm256_fmadd_pd(b0, b0, bb));
  }
  DotNorms out{hsum(ab), hsum(aa), hsum(bb)};
  for (; i < n; ++i) {
    const double x = a[i];
    const double y = b[i];
    out.dot += x * y;
    out.norm_a += x * x;
    out.norm_b += y * y;
  }
  return out;
}

void scale(std::span<float> a, float factor) {
  const std::size_t n = a.size();
  const __m256 f = _mm256_set1_ps(factor);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_ps(a.data() + i, _mm256_mul_ps(_mm256_loadu_ps(a.data() + i), f));
  }
  for (; i < n; ++i) a[i] *= factor;
}

}  // namespace ceg::simd::avx2
