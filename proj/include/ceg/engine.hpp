// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ceg/config.hpp"
#include "ceg/graph.hpp"
#include "ceg/reward.hpp"
#include "ceg/wire.hpp"
#include "json.hpp"

namespace ceg {

inline constexpr std::string_view kVersion = "0.1.0";

struct ScoreRequest {
  CriticalEvidenceGraph reference;
  EvidenceGraph generated;
  std::optional<std::string> response;
  std::optional<std::string> gold;
};

/// Request body of POST /v1/score and one line of score-batch input:
/// {"reference": <CEG document>, "generated_triplets": [[s,p,o],...],
///  "response"?: string, "gold"?: string}
ScoreRequest parse_score_request(const nlohmann::json& doc, std::string_view text = {});

struct CegExtraction {
  CriticalEvidenceGraph ceg;
  CegStats stats;
  double conclusion_similarity = 0.0;
};

/// Scoring core shared by the CLI and the HTTP service, so both emit the same
/// bytes for the same input. Immutable after construction; safe to share
/// across threads.
class Engine {
 public:
  explicit Engine(EngineConfig config);
  Engine(EngineConfig config, std::shared_ptr<const SimilarityModel> model);

  const EngineConfig& config() const noexcept { return config_; }
  const SimilarityModel& model() const noexcept { return *model_; }

  /// Conclusion selection, backward traversal, transitive reduction.
  CegExtraction extract(std::span<const Triplet> triplets, std::string_view answer) const;
  nlohmann::json extract_document(std::span<const Triplet> triplets, std::string_view answer) const;

  RewardBreakdown score(const ScoreRequest& request) const;
  /// dump(breakdown_to_json(score(parse_score_request(doc))))
  std::string score_json(const nlohmann::json& request, std::string_view text = {}) const;

  /// {"rewards": [...], "advantage_mode"?} -> {"advantages": [...]}
  nlohmann::json advantages(const nlohmann::json& request) const;
  /// {"rewards", "token_logps", "old_logps", "ref_logps", "epsilon_clip"?,
  ///  "beta"?} -> {"objective", "advantages", "token_terms"}
  nlohmann::json objective(const nlohmann::json& request) const;

 private:
  EngineConfig config_;
  std::shared_ptr<const SimilarityModel> model_;
};

/// Scores JSONL request lines with `workers` threads. Output line i belongs
/// to input line i and is either a breakdown or {"error": {...}}.
std::vector<std::string> score_batch(const Engine& engine, std::span<const std::string> lines, std::size_t workers);

}  // namespace ceg
