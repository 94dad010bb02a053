// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "ceg/error.hpp"
#include "ceg/grpo.hpp"
#include "doctest.h"

using namespace ceg;
using namespace ceg::grpo;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Internal;
}

std::vector<double> random_rewards(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  std::vector<double> r(n);
  for (auto& x : r) x = d(rng);
  return r;
}

}  // namespace

TEST_CASE("group_advantages examples") {
  CHECK(group_advantages(std::vector<double>{1, 1, 1, 1}) == std::vector<double>{0, 0, 0, 0});
  const auto two = group_advantages(std::vector<double>{0, 1});
  CHECK(two[0] == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(two[1] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(two[1] == 0.5 / (0.5 + 1e-8));
  CHECK(group_advantages(std::vector<double>{0.7}) == std::vector<double>{0.0});
  CHECK(group_advantages(std::vector<double>{0, 1}, AdvantageMode::MeanCenter) == std::vector<double>{-0.5, 0.5});
  CHECK(code_of([] { group_advantages(std::vector<double>{}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { group_advantages(std::vector<double>{1.0, NAN}); }) == ErrorCode::InvalidReward);
  CHECK(code_of([] { group_advantages(std::vector<double>{INFINITY}); }) == ErrorCode::InvalidReward);
}

TEST_CASE("group_advantages properties") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> size(1, 32);
  std::uniform_real_distribution<double> shift(-10.0, 10.0);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int round = 0; round < 1000; ++round) {
    const std::size_t g = size(rng);
    const auto r = random_rewards(rng, g);
    const auto a = group_advantages(r);
    CHECK(std::abs(std::accumulate(a.begin(), a.end(), 0.0)) < 1e-6 * static_cast<double>(g));

    const double c = shift(rng);
    auto shifted = r;
    for (auto& x : shifted) x += c;
    const auto as = group_advantages(shifted);
    for (std::size_t i = 0; i < g; ++i) CHECK(as[i] == doctest::Approx(a[i]).epsilon(1e-9).scale(1.0));

    const double k = scale(rng);
    auto scaled = r;
    for (auto& x : scaled) x *= k;
    const auto ak = group_advantages(scaled);
    for (std::size_t i = 0; i < g; ++i) CHECK(std::abs(ak[i] - a[i]) < 1e-6);
  }
}

TEST_CASE("prob_ratio") {
  CHECK(prob_ratio(-1.0, -1.0) == 1.0);
  CHECK(prob_ratio(-1.0 + std::log(2.0), -1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(prob_ratio(-2.0 - std::log(4.0), -2.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(code_of([] { prob_ratio(0.0, -1000.0); }) == ErrorCode::RatioOverflow);
  CHECK(code_of([] { prob_ratio(NAN, -1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("clipped_surrogate") {
  CHECK(clipped_surrogate(1.0, 2.0, 0.2) == 2.0);
  CHECK(clipped_surrogate(1.5, 1.0, 0.2) == 1.2);
  CHECK(clipped_surrogate(0.5, -1.0, 0.2) == -0.8);
  CHECK(clipped_surrogate(0.5, 1.0, 0.2) == 0.5);
  CHECK(clipped_surrogate(1.5, -1.0, 0.2) == -1.5);
  CHECK(code_of([] { clipped_surrogate(1.0, 1.0, 0.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { clipped_surrogate(1.0, 1.0, 1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("clipped_surrogate properties") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> adv(-10.0, 10.0);
  std::uniform_real_distribution<double> eps(0.01, 0.99);
  std::uniform_real_distribution<double> ratio(0.0, 5.0);
  for (int round = 0; round < 1000; ++round) {
    const double a = adv(rng), e = eps(rng), r = ratio(rng);
    CHECK(clipped_surrogate(1.0, a, e) == a);
    CHECK(clipped_surrogate(r, a, e) <= r * a);
  }
}

TEST_CASE("kl_penalty") {
  CHECK(kl_penalty(-1.0, -1.0) == 0.0);
  const double rho2 = kl_penalty(-1.0, -1.0 + std::log(2.0));
  CHECK(std::abs(rho2 - (1.0 - std::log(2.0))) <= 1e-9);
  CHECK(rho2 == doctest::Approx(0.30685).epsilon(1e-5));
  CHECK(kl_penalty(-1.0, -3.0, KlEstimator::K1) == 2.0);
  CHECK(kl_penalty(-1.0, -3.0, KlEstimator::K2) == 2.0);
  CHECK(code_of([] { kl_penalty(-800.0, 0.0); }) == ErrorCode::RatioOverflow);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> lp(-20.0, 0.0);
  for (int round = 0; round < 1000; ++round) {
    const double p = lp(rng), q = lp(rng);
    const double k = kl_penalty(p, q);
    CHECK(k >= 0.0);
    if (std::abs(p - q) > 1e-6) CHECK(k > 0.0);
    CHECK(kl_penalty(p, p) == 0.0);
  }
}

TEST_CASE("estimator and mode names") {
  CHECK(parse_kl_estimator("k3") == KlEstimator::K3);
  CHECK(to_string(KlEstimator::K2) == "k2");
  CHECK(parse_advantage_mode("mean_center") == AdvantageMode::MeanCenter);
  CHECK(to_string(AdvantageMode::Standardize) == "standardize");
  CHECK(code_of([] { parse_kl_estimator("k9"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { parse_advantage_mode("zscore"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("objective examples") {
  SUBCASE("single output, equal log-probs") {
    Group g{{0.42}, {{-0.3}}, {{-0.3}}, {{-0.3}}};
    CHECK(objective(g).value == 0.0);
  }
  SUBCASE("one token term") {
    const double term = clipped_surrogate(1.5, 1.0, 0.2) - 0.001 * kl_penalty(-1.0, -1.0 + std::log(2.0));
    CHECK(term == doctest::Approx(1.2 - 0.00030685).epsilon(1e-8));
    CHECK(std::abs(term - (1.2 - 0.001 * (1.0 - std::log(2.0)))) <= 1e-12);
  }
  SUBCASE("two outputs of lengths 1 and 2, hand unrolled") {
    const double l15 = std::log(1.5), l2 = std::log(2.0);
    Group g;
    g.rewards = {0.0, 1.0};
    g.token_logps = {{-2.0 + l15}, {-1.0, -0.5}};
    g.old_logps = {{-2.0}, {-1.2, -0.4}};
    g.ref_logps = {{-2.0 + l15 + l2}, {-1.0, -0.9}};

    const double a1 = 0.5 / (0.5 + 1e-8);
    const double a0 = -a1;
    auto term = [](double r, double a, double p, double q) {
      const double un = r * a;
      const double cl = std::min(std::max(r, 0.8), 1.2) * a;
      const double rho = std::exp(q - p);
      return std::min(un, cl) - 0.001 * (rho - std::log(rho) - 1.0);
    };
    const double t00 = term(1.5, a0, -2.0 + l15, -2.0 + l15 + l2);
    const double t10 = term(std::exp(0.2), a1, -1.0, -1.0);
    const double t11 = term(std::exp(-0.1), a1, -0.5, -0.9);
    const double want = 0.5 * (t00 + 0.5 * (t10 + t11));

    const Objective got = objective(g);
    CHECK(std::abs(got.value - want) <= 1e-12);
    REQUIRE(got.terms.size() == 2);
    CHECK(got.terms[0].size() == 1);
    CHECK(got.terms[1].size() == 2);
    CHECK(got.ratios[1][0] == doctest::Approx(std::exp(0.2)).epsilon(1e-14));
  }
}

TEST_CASE("objective validation") {
  Group ok{{1.0, 0.0}, {{-0.1}, {-0.2}}, {{-0.1}, {-0.2}}, {{-0.1}, {-0.2}}};
  CHECK_NOTHROW(objective(ok));

  Group positive = ok;
  positive.token_logps[0][0] = 0.1;
  CHECK(code_of([&] { objective(positive); }) == ErrorCode::InvalidArgument);

  Group ragged = ok;
  ragged.old_logps[1].push_back(-0.3);
  CHECK(code_of([&] { objective(ragged); }) == ErrorCode::InvalidArgument);

  Group empty_row = ok;
  empty_row.token_logps[0].clear();
  empty_row.old_logps[0].clear();
  empty_row.ref_logps[0].clear();
  CHECK(code_of([&] { objective(empty_row); }) == ErrorCode::InvalidArgument);

  Group rows = ok;
  rows.ref_logps.pop_back();
  CHECK(code_of([&] { objective(rows); }) == ErrorCode::InvalidArgument);

  Group eps = ok;
  eps.epsilon_clip = 1.5;
  CHECK(code_of([&] { objective(eps); }) == ErrorCode::InvalidArgument);

  Group beta = ok;
  beta.beta = -1.0;
  CHECK(code_of([&] { objective(beta); }) == ErrorCode::InvalidArgument);

  CHECK(code_of([] { objective(Group{}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("objective with beta 0 and unit ratios is the mean advantage") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  std::uniform_int_distribution<std::size_t> len(1, 6);
  std::uniform_real_distribution<double> lp(-5.0, 0.0);
  for (int round = 0; round < 500; ++round) {
    Group g;
    g.beta = 0.0;
    const std::size_t n = size(rng);
    g.rewards = random_rewards(rng, n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> row(len(rng));
      for (auto& x : row) x = lp(rng);
      g.token_logps.push_back(row);
      g.old_logps.push_back(row);
      std::vector<double> ref = row;
      for (auto& x : ref) x = lp(rng);
      g.ref_logps.push_back(ref);
    }
    const auto adv = group_advantages(g.rewards);
    const double want = std::accumulate(adv.begin(), adv.end(), 0.0) / static_cast<double>(n);
    const auto got = objective(g);
    CHECK(std::abs(got.value - want) < 1e-12);
    CHECK(objective(g).value == got.value);
  }
}
