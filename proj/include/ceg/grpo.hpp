// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Scalar math of the group-relative clipped objective with a KL penalty
// toward a reference policy. No gradients, no models: trainers feed token
// log-probabilities in and take the objective and per-token terms out.

#include <span>
#include <string_view>
#include <vector>

namespace ceg::grpo {

inline constexpr double kStdGuard = 1e-8;

enum class AdvantageMode {
  Standardize,  // (r - mean) / (population std + 1e-8)
  MeanCenter,   // r - mean
};

enum class KlEstimator {
  K3,  // rho - log(rho) - 1 with rho = pi_ref / pi_theta; nonnegative
  K1,  // log(pi_theta / pi_ref)
  K2,  // 0.5 * log(pi_theta / pi_ref)^2
};

AdvantageMode parse_advantage_mode(std::string_view name);
KlEstimator parse_kl_estimator(std::string_view name);
std::string_view to_string(AdvantageMode mode);
std::string_view to_string(KlEstimator estimator);

/// One advantage per output; every token of output i shares advantages[i].
std::vector<double> group_advantages(std::span<const double> rewards,
                                     AdvantageMode mode = AdvantageMode::Standardize);

/// exp(logp_new - logp_old).
double prob_ratio(double logp_new, double logp_old);

/// min(ratio * A, clip(ratio, 1 - eps, 1 + eps) * A).
double clipped_surrogate(double ratio, double advantage, double epsilon);

double kl_penalty(double logp_policy, double logp_ref, KlEstimator estimator = KlEstimator::K3);

struct Group {
  std::vector<double> rewards;
  std::vector<std::vector<double>> token_logps;  // current policy
  std::vector<std::vector<double>> old_logps;    // behavior policy
  std::vector<std::vector<double>> ref_logps;    // reference policy
  double epsilon_clip = 0.2;
  double beta = 0.001;
  AdvantageMode advantage_mode = AdvantageMode::Standardize;
  KlEstimator kl_estimator = KlEstimator::K3;
};

/// Throws InvalidArgument / InvalidReward on any shape or range violation.
void validate(const Group& group);

struct Objective {
  double value = 0.0;
  std::vector<double> advantages;
  /// terms[i][t] = surrogate[i][t] - beta * kl[i][t]
  std::vector<std::vector<double>> terms;
  std::vector<std::vector<double>> ratios;
  std::vector<std::vector<double>> surrogates;
  std::vector<std::vector<double>> kls;
};

/// (1/G) sum_i (1/|o_i|) sum_t (surrogate - beta * kl), summed sequentially.
Objective objective(const Group& group);

}  // namespace ceg::grpo
