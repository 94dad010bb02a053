// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "ceg/simd.hpp"
#include "doctest.h"

using namespace ceg::simd;

namespace {

std::vector<float> random_floats(std::mt19937_64& rng, std::size_t n, float lo, float hi) {
  std::uniform_real_distribution<float> d(lo, hi);
  std::vector<float> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// Summation-order error bound for n double additions of exact products.
double bound(std::span<const float> a, std::span<const float> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(static_cast<double>(a[i]) * b[i]);
  return 1e-12 * (s + 1e-300);
}

const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 32, 33, 63, 64, 65, 255, 256, 1024, 1031, 4096};

}  // namespace

TEST_CASE("scalar kernels") {
  const std::vector<float> a{1.0f, 2.0f, 3.0f};
  const std::vector<float> b{4.0f, -5.0f, 6.0f};
  CHECK(scalar::dot(a, b) == 12.0);
  CHECK(scalar::squared_norm(a) == 14.0);
  const DotNorms dn = scalar::dot_norms(a, b);
  CHECK(dn.dot == 12.0);
  CHECK(dn.norm_a == 14.0);
  CHECK(dn.norm_b == 77.0);
  std::vector<float> c = a;
  scalar::scale(c, 0.5f);
  CHECK(c == std::vector<float>{0.5f, 1.0f, 1.5f});
  CHECK(scalar::dot({}, {}) == 0.0);
}

TEST_CASE("dispatch reports a usable level") {
  CHECK(supported(Level::Scalar));
  CHECK(supported(active_level()));
  const std::vector<float> a{3.0f, 4.0f};
  CHECK(squared_norm(a) == 25.0);
  CHECK(dot(a, a) == 25.0);
}

#if defined(CEG_HAVE_AVX2_KERNELS)

TEST_CASE("avx2 kernels match scalar reference") {
  if (!supported(Level::Avx2)) {
    MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
    return;
  }
  std::mt19937_64 rng(123);
  for (int round = 0; round < 20; ++round) {
    for (std::size_t n : kLengths) {
      const auto a = random_floats(rng, n, -1.0f, 1.0f);
      const auto b = random_floats(rng, n, -1.0f, 1.0f);
      CAPTURE(n);
      CHECK(std::abs(avx2::dot(a, b) - scalar::dot(a, b)) <= bound(a, b));
      CHECK(std::abs(avx2::squared_norm(a) - scalar::squared_norm(a)) <= bound(a, a));

      const DotNorms x = avx2::dot_norms(a, b);
      const DotNorms y = scalar::dot_norms(a, b);
      CHECK(std::abs(x.dot - y.dot) <= bound(a, b));
      CHECK(std::abs(x.norm_a - y.norm_a) <= bound(a, a));
      CHECK(std::abs(x.norm_b - y.norm_b) <= bound(b, b));

      auto s1 = random_floats(rng, n, -100.0f, 100.0f);
      auto s2 = s1;
      avx2::scale(s1, 0.37f);
      scalar::scale(s2, 0.37f);
      CHECK(std::memcmp(s1.data(), s2.data(), n * sizeof(float)) == 0);
    }
  }
}

TEST_CASE("avx2 kernels on integer-valued input are exact") {
  if (!supported(Level::Avx2)) return;
  std::vector<float> a(1000), b(1000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = static_cast<float>(i % 7);
    b[i] = static_cast<float>(static_cast<int>(i % 5) - 2);
  }
  CHECK(avx2::dot(a, b) == scalar::dot(a, b));
  CHECK(avx2::squared_norm(a) == scalar::squared_norm(a));
}

TEST_CASE("avx2 handles unaligned subspans") {
  if (!supported(Level::Avx2)) return;
  std::mt19937_64 rng(5);
  const auto a = random_floats(rng, 100, -1.0f, 1.0f);
  const auto b = random_floats(rng, 100, -1.0f, 1.0f);
  for (std::size_t off = 0; off < 8; ++off) {
    std::span<const float> sa(a.data() + off, 90);
    std::span<const float> sb(b.data() + off, 90);
    CHECK(std::abs(avx2::dot(sa, sb) - scalar::dot(sa, sb)) <= bound(sa, sb));
  }
}

#endif
