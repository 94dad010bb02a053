// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string_view>

#include "ceg/embedding.hpp"
#include "ceg/grpo.hpp"
#include "ceg/reward.hpp"
#include "ceg/similarity.hpp"
#include "json.hpp"

namespace ceg {

enum class ProviderKind { Hash, Http, Discrete };

ProviderKind parse_provider_kind(std::string_view name);
std::string_view to_string(ProviderKind kind);

struct ProviderConfig {
  ProviderKind kind = ProviderKind::Hash;
  std::size_t hash_dimension = 256;
  HttpEmbedderOptions http;
  std::optional<std::filesystem::path> cache_dir;
};

/// Everything tunable, as a flat JSON object with the same key names:
/// lambda_node, lambda_struct, lambda_chain, w_reason, w_answer, w_format,
/// theta_entity, theta_relation, epsilon_clip, beta, advantage_mode,
/// kl_estimator, provider, hash_dimension, embed_url, embed_model,
/// embed_timeout_ms, embed_retries, cache_dir. Absent keys keep defaults.
struct EngineConfig {
  RewardWeights weights;
  Thresholds thresholds;
  double epsilon_clip = 0.2;
  double beta = 0.001;
  grpo::AdvantageMode advantage_mode = grpo::AdvantageMode::Standardize;
  grpo::KlEstimator kl_estimator = grpo::KlEstimator::K3;
  ProviderConfig provider;

  ScoreOptions score_options() const { return ScoreOptions{weights, thresholds, {}}; }
};

/// Applies keys from `doc` over `base` and validates the result. Unknown
/// keys raise ParseError(kind "unknown_field").
EngineConfig config_from_json(const nlohmann::json& doc, EngineConfig base = {});
nlohmann::json config_to_json(const EngineConfig& config);
EngineConfig load_config_file(const std::filesystem::path& path, EngineConfig base = {});

/// EMBED_URL, EMBED_MODEL, EMBED_TIMEOUT_MS and CEG_CACHE_DIR override the
/// corresponding settings when set.
void apply_environment(EngineConfig& config);

void validate(const EngineConfig& config);

/// Builds the similarity backend described by `provider`. Embedding
/// providers are wrapped in a read-through cache.
std::shared_ptr<const SimilarityModel> make_similarity_model(const ProviderConfig& provider);

std::string read_file(const std::filesystem::path& path);

}  // namespace ceg
