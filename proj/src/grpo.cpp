// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include "ceg/grpo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ceg/error.hpp"

namespace ceg::grpo {

AdvantageMode parse_advantage_mode(std::string_view name) {
  if (name == "standardize") return AdvantageMode::Standardize;
  if (name == "mean_center") return AdvantageMode::MeanCenter;
  throw Error(ErrorCode::InvalidArgument, "unknown advantage mode", {{"value", std::string(name)}});
}

KlEstimator parse_kl_estimator(std::string_view name) {
  if (name == "k3") return KlEstimator::K3;
  if (name == "k1") return KlEstimator::K1;
  if (name == "k2") return KlEstimator::K2;
  throw Error(ErrorCode::InvalidArgument, "unknown KL estimator", {{"value", std::string(name)}});
}

std::string_view to_string(AdvantageMode mode) {
  return mode == AdvantageMode::Standardize ? "standardize" : "mean_center";
}

std::string_view to_string(KlEstimator estimator) {
  switch (estimator) {
    case KlEstimator::K3: return "k3";
    case KlEstimator::K1: return "k1";
    case KlEstimator::K2: return "k2";
  }
  return "k3";
}

std::vector<double> group_advantages(std::span<const double> rewards, AdvantageMode mode) {
  if (rewards.empty()) throw Error(ErrorCode::InvalidArgument, "group must contain at least one output");
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    if (!std::isfinite(rewards[i])) {
      throw Error(ErrorCode::InvalidReward, "reward is not finite", {{"index", i}});
    }
  }
  const double n = static_cast<double>(rewards.size());
  double sum = 0.0;
  for (double r : rewards) sum += r;
  const double mean = sum / n;

  std::vector<double> out(rewards.size());
  if (mode == AdvantageMode::MeanCenter) {
    for (std::size_t i = 0; i < rewards.size(); ++i) out[i] = rewards[i] - mean;
    return out;
  }
  double sq = 0.0;
  for (double r : rewards) sq += (r - mean) * (r - mean);
  const double denom = std::sqrt(sq / n) + kStdGuard;
  for (std::size_t i = 0; i < rewards.size(); ++i) out[i] = (rewards[i] - mean) / denom;
  return out;
}

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " is not finite");
  }
}

}  // namespace

double prob_ratio(double logp_new, double logp_old) {
  require_finite(logp_new, "log-probability");
  require_finite(logp_old, "log-probability");
  const double r = std::exp(logp_new - logp_old);
  if (!std::isfinite(r)) {
    throw Error(ErrorCode::RatioOverflow, "probability ratio overflowed",
                {{"logp_new", logp_new}, {"logp_old", logp_old}});
  }
  return r;
}

double clipped_surrogate(double ratio, double advantage, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "clip epsilon must lie in (0, 1)", {{"epsilon", epsilon}});
  }
  const double clipped = std::clamp(ratio, 1.0 - epsilon, 1.0 + epsilon);
  return std::min(ratio * advantage, clipped * advantage);
}

double kl_penalty(double logp_policy, double logp_ref, KlEstimator estimator) {
  require_finite(logp_policy, "log-probability");
  require_finite(logp_ref, "log-probability");
  const double log_rho = logp_ref - logp_policy;
  switch (estimator) {
    case KlEstimator::K1:
      return -log_rho;
    case KlEstimator::K2:
      return 0.5 * log_rho * log_rho;
    case KlEstimator::K3: {
      // rho - log(rho) - 1, written as expm1(log_rho) - log_rho for accuracy near rho = 1.
      const double v = std::expm1(log_rho) - log_rho;
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::RatioOverflow, "KL ratio overflowed",
                    {{"logp_policy", logp_policy}, {"logp_ref", logp_ref}});
      }
      return std::max(v, 0.0);
    }
  }
  return 0.0;
}

void validate(const Group& g) {
  const std::size_t n = g.rewards.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "group must contain at least one output");
  if (g.token_logps.size() != n || g.old_logps.size() != n || g.ref_logps.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "log-probability arrays must have one row per output",
                {{"outputs", n}});
  }
  if (!(g.epsilon_clip > 0.0 && g.epsilon_clip < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "clip epsilon must lie in (0, 1)", {{"epsilon", g.epsilon_clip}});
  }
  if (!std::isfinite(g.beta) || g.beta < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "beta must be finite and nonnegative", {{"beta", g.beta}});
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t len = g.token_logps[i].size();
    if (len == 0) throw Error(ErrorCode::InvalidArgument, "output has no tokens", {{"output", i}});
    if (g.old_logps[i].size() != len || g.ref_logps[i].size() != len) {
      throw Error(ErrorCode::InvalidArgument, "log-probability rows differ in length", {{"output", i}});
    }
    for (const auto* row : {&g.token_logps[i], &g.old_logps[i], &g.ref_logps[i]}) {
      for (std::size_t t = 0; t < len; ++t) {
        const double lp = (*row)[t];
        if (!std::isfinite(lp) || lp > 0.0) {
          throw Error(ErrorCode::InvalidArgument, "log-probabilities must be finite and <= 0",
                      {{"output", i}, {"token", t}, {"value", lp}});
        }
      }
    }
  }
}

Objective objective(const Group& g) {
  validate(g);
  Objective out;
  out.advantages = group_advantages(g.rewards, g.advantage_mode);
  const std::size_t n = g.rewards.size();
  out.terms.resize(n);
  out.ratios.resize(n);
  out.surrogates.resize(n);
  out.kls.resize(n);

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t len = g.token_logps[i].size();
    out.terms[i].resize(len);
    out.ratios[i].resize(len);
    out.surrogates[i].resize(len);
    out.kls[i].resize(len);
    double row_sum = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
      const double ratio = prob_ratio(g.token_logps[i][t], g.old_logps[i][t]);
      const double surrogate = clipped_surrogate(ratio, out.advantages[i], g.epsilon_clip);
      const double kl = kl_penalty(g.token_logps[i][t], g.ref_logps[i][t], g.kl_estimator);
      const double term = surrogate - g.beta * kl;
      out.ratios[i][t] = ratio;
      out.surrogates[i][t] = surrogate;
      out.kls[i][t] = kl;
      out.terms[i][t] = term;
      row_sum += term;
    }
    total += row_sum / static_cast<double>(len);
  }
  out.value = total / static_cast<double>(n);
  return out;
}

}  // namespace ceg::grpo
