// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include "ceg/simd.hpp"

namespace ceg::simd::scalar {

double dot(std::span<const float> a, std::span<const float> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return acc;
}

double squared_norm(std::span<const float> a) {
  double acc = 0.0;
  for (float x : a) acc += static_cast<double>(x) * static_cast<double>(x);
  return acc;
}

DotNorms dot_norms(std::span<const float> a, std::span<const float> b) {
  DotNorms out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i];
    const double y = b[i];
    out.dot += x * y;
    out.norm_a += x * x;
    out.norm_b += y * y;
  }
  return out;
}

void scale(std::span<float> a, float factor) {
  for (float& x : a) x *= factor;
}

}  // namespace ceg::simd::scalar
