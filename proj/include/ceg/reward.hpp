// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "ceg/graph.hpp"
#include "ceg/similarity.hpp"

namespace ceg {

/// Mixing weights. Defaults are the published RL-stage values.
struct RewardWeights {
  double lambda_node = 0.5;
  double lambda_struct = 0.3;
  double lambda_chain = 0.2;
  double w_reason = 0.3;
  double w_answer = 0.6;
  double w_format = 0.1;
};

/// Each triple must be nonnegative and sum to 1 within 1e-9.
void validate(const RewardWeights& weights);

struct RewardBreakdown {
  double r_node = 0.0;
  double r_struct = 0.0;
  double r_chain = 0.0;
  double r_reason = 0.0;
  int r_answer = 0;
  int r_format = 0;
  double r_crp = 0.0;
  bool answer_missing = true;
  std::set<Triplet> recalled_triplets;
  /// Recalled reference triplets inside the largest connected component.
  std::size_t largest_component_size = 0;
};

/// Mean over reference nodes of the best similarity (clamped to [0, 1]) to
/// any generated node. An empty generated graph scores 0.
double node_coverage(const CriticalEvidenceGraph& ref, const EvidenceGraph& gen, const SimilarityModel& model);

struct StructuralResult {
  double score = 0.0;
  std::set<Triplet> recalled;
};

/// A reference triplet is recalled when one generated triplet maps onto it
/// element-wise through `map`.
StructuralResult structural_correctness(const CriticalEvidenceGraph& ref, const EvidenceGraph& gen,
                                        const ElementMap& map);

struct ChainResult {
  double score = 0.0;
  std::size_t largest_component_size = 0;
};

ChainResult chain_completeness_detail(const CriticalEvidenceGraph& ref, const std::set<Triplet>& recalled);

/// Share of reference triplets that sit in the largest undirected component
/// of the recalled triplets.
double chain_completeness(const CriticalEvidenceGraph& ref, const std::set<Triplet>& recalled);

/// lambda-weighted sum of the three process scores, clamped to [0, 1].
double reasoning_reward(double r_node, double r_struct, double r_chain, const RewardWeights& weights);

/// w-weighted sum of reasoning, answer and format scores, clamped to [0, 1].
double final_reward(double r_reason, int r_answer, int r_format, const RewardWeights& weights);

/// Content of the last \boxed{...} whose braces balance.
std::optional<std::string> last_boxed(std::string_view response);

struct AnswerCheck {
  int score = 0;
  bool missing = true;
  std::optional<std::string> extracted;
};

/// Optional external judge for open-ended answers: (extracted, gold) -> correct.
using AnswerJudge = std::function<bool(std::string_view, std::string_view)>;

AnswerCheck answer_reward(std::string_view response, std::string_view gold, const AnswerJudge& judge = {});

/// 1 iff nonblank reasoning text precedes exactly one balanced \boxed{...}.
int format_reward(std::string_view response);

struct ScoreOptions {
  RewardWeights weights;
  Thresholds thresholds;
  AnswerJudge judge;
};

RewardBreakdown crp_reward(const CriticalEvidenceGraph& ref, const EvidenceGraph& gen,
                           std::optional<std::string_view> response, std::optional<std::string_view> gold,
                           const SimilarityModel& model, const ScoreOptions& options);

}  // namespace ceg
