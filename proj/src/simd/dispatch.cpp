// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <string>

#include "ceg/simd.hpp"

namespace ceg::simd {

std::string_view to_string(Level level) {
  switch (level) {
    case Level::Scalar: return "scalar";
    case Level::Avx2: return "avx2";
  }
  return "unknown";
}

bool supported(Level level) {
  switch (level) {
    case Level::Scalar:
      return true;
    case Level::Avx2:
#if defined(CEG_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

namespace {

struct KernelTable {
  Level level;
  double (*dot)(std::span<const float>, std::span<const float>);
  double (*squared_norm)(std::span<const float>);
  DotNorms (*dot_norms)(std::span<const float>, std::span<const float>);
  void (*scale)(std::span<float>, float);
};

KernelTable select() {
  const char* forced = std::getenv("CEG_SIMD");
  const bool want_scalar = forced != nullptr && std::string(forced) == "scalar";
#if defined(CEG_HAVE_AVX2_KERNELS)
  if (!want_scalar && supported(Level::Avx2)) {
    return {Level::Avx2, &avx2::dot, &avx2::squared_norm, &avx2::dot_norms, &avx2::scale};
  }
#else
  (void)want_scalar;
#endif
  return {Level::Scalar, &scalar::dot, &scalar::squared_norm, &scalar::dot_norms, &scalar::scale};
}

const KernelTable& table() {
  static const KernelTable t = select();
  return t;
}

}  // namespace

Level active_level() { return table().level; }

double dot(std::span<const float> a, std::span<const float> b) { return table().dot(a, b); }
double squared_norm(std::span<const float> a) { return table().squared_norm(a); }
DotNorms dot_norms(std::span<const float> a, std::span<const float> b) { return table().dot_norms(a, b); }
void scale(std::span<float> a, float factor) { table().scale(a, factor); }

}  // namespace ceg::simd
