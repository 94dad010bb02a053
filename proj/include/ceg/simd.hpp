// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Inner loops of the embedding math. Inputs are float32 (the storage type of
// embedding vectors); every reduction accumulates in double.
//
// Each kernel has a scalar reference in ceg::simd::scalar and, on x86-64, an
// AVX2+FMA variant in ceg::simd::avx2. The unqualified entry points dispatch
// once per process to the best variant the CPU supports. Setting
// CEG_SIMD=scalar in the environment pins the scalar path.
//
// The variants sum in different orders, so they agree to rounding, not
// bitwise. Within one process the chosen variant is fixed, which keeps every
// score reproducible run to run.

#include <cstddef>
#include <span>
#include <string_view>

namespace ceg::simd {

struct DotNorms {
  double dot = 0.0;
  double norm_a = 0.0;  // sum of squares of a
  double norm_b = 0.0;  // sum of squares of b
};

enum class Level { Scalar, Avx2 };

std::string_view to_string(Level level);

namespace scalar {
double dot(std::span<const float> a, std::span<const float> b);
double squared_norm(std::span<const float> a);
DotNorms dot_norms(std::span<const float> a, std::span<const float> b);
void scale(std::span<float> a, float factor);
}  // namespace scalar

#if defined(CEG_HAVE_AVX2_KERNELS)
namespace avx2 {
double dot(std::span<const float> a, std::span<const float> b);
double squared_norm(std::span<const float> a);
DotNorms dot_norms(std::span<const float> a, std::span<const float> b);
void scale(std::span<float> a, float factor);
}  // namespace avx2
#endif

/// True when this build has the variant and the running CPU supports it.
bool supported(Level level);

/// The variant used by the dispatching entry points below.
Level active_level();

double dot(std::span<const float> a, std::span<const float> b);
double squared_norm(std::span<const float> a);
DotNorms dot_norms(std::span<const float> a, std::span<const float> b);
void scale(std::span<float> a, float factor);

}  // namespace ceg::simd
