// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include "ceg/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ceg/error.hpp"
#include "ceg/wire.hpp"

namespace ceg {

using nlohmann::json;

ProviderKind parse_provider_kind(std::string_view name) {
  if (name == "hash") return ProviderKind::Hash;
  if (name == "http") return ProviderKind::Http;
  if (name == "discrete") return ProviderKind::Discrete;
  throw Error(ErrorCode::InvalidArgument, "unknown provider (expected http, hash or discrete)",
              {{"value", std::string(name)}});
}

std::string_view to_string(ProviderKind kind) {
  switch (kind) {
    case ProviderKind::Hash: return "hash";
    case ProviderKind::Http: return "http";
    case ProviderKind::Discrete: return "discrete";
  }
  return "hash";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read file", {{"path", path.string()}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

double get_number(const json& doc, const std::string& key) {
  if (!doc[key].is_number()) throw_parse("wrong_type", key + " must be a number", "/" + key, {});
  return doc[key].get<double>();
}

std::string get_string(const json& doc, const std::string& key) {
  if (!doc[key].is_string()) throw_parse("wrong_type", key + " must be a string", "/" + key, {});
  return doc[key].get<std::string>();
}

}  // namespace

EngineConfig config_from_json(const json& doc, EngineConfig cfg) {
  if (!doc.is_object()) throw_parse("wrong_type", "configuration must be an object", "", {});
  for (const auto& [key, value] : doc.items()) {
    if (key == "lambda_node") cfg.weights.lambda_node = get_number(doc, key);
    else if (key == "lambda_struct") cfg.weights.lambda_struct = get_number(doc, key);
    else if (key == "lambda_chain") cfg.weights.lambda_chain = get_number(doc, key);
    else if (key == "w_reason") cfg.weights.w_reason = get_number(doc, key);
    else if (key == "w_answer") cfg.weights.w_answer = get_number(doc, key);
    else if (key == "w_format") cfg.weights.w_format = get_number(doc, key);
    else if (key == "theta_entity") cfg.thresholds.entity = get_number(doc, key);
    else if (key == "theta_relation") cfg.thresholds.relation = get_number(doc, key);
    else if (key == "epsilon_clip") cfg.epsilon_clip = get_number(doc, key);
    else if (key == "beta") cfg.beta = get_number(doc, key);
    else if (key == "advantage_mode") cfg.advantage_mode = grpo::parse_advantage_mode(get_string(doc, key));
    else if (key == "kl_estimator") cfg.kl_estimator = grpo::parse_kl_estimator(get_string(doc, key));
    else if (key == "provider") cfg.provider.kind = parse_provider_kind(get_string(doc, key));
    else if (key == "hash_dimension") cfg.provider.hash_dimension = static_cast<std::size_t>(get_number(doc, key));
    else if (key == "embed_url") cfg.provider.http.url = get_string(doc, key);
    else if (key == "embed_model") cfg.provider.http.model = get_string(doc, key);
    else if (key == "embed_timeout_ms") cfg.provider.http.timeout_ms = static_cast<int>(get_number(doc, key));
    else if (key == "embed_retries") cfg.provider.http.retries = static_cast<int>(get_number(doc, key));
    else if (key == "cache_dir") {
      if (value.is_null()) cfg.provider.cache_dir.reset();
      else cfg.provider.cache_dir = get_string(doc, key);
    } else if (key == "format_version") {
      continue;
    } else {
      throw_parse("unknown_field", "unknown configuration key '" + key + "'", "/" + key, {}, {{"field", key}});
    }
  }
  validate(cfg);
  return cfg;
}

json config_to_json(const EngineConfig& cfg) {
  json doc{{"format_version", kFormatVersion},
           {"lambda_node", cfg.weights.lambda_node},
           {"lambda_struct", cfg.weights.lambda_struct},
           {"lambda_chain", cfg.weights.lambda_chain},
           {"w_reason", cfg.weights.w_reason},
           {"w_answer", cfg.weights.w_answer},
           {"w_format", cfg.weights.w_format},
           {"theta_entity", cfg.thresholds.entity},
           {"theta_relation", cfg.thresholds.relation},
           {"epsilon_clip", cfg.epsilon_clip},
           {"beta", cfg.beta},
           {"advantage_mode", std::string(grpo::to_string(cfg.advantage_mode))},
           {"kl_estimator", std::string(grpo::to_string(cfg.kl_estimator))},
           {"provider", std::string(to_string(cfg.provider.kind))},
           {"hash_dimension", cfg.provider.hash_dimension},
           {"embed_url", cfg.provider.http.url},
           {"embed_model", cfg.provider.http.model},
           {"embed_timeout_ms", cfg.provider.http.timeout_ms},
           {"embed_retries", cfg.provider.http.retries}};
  doc["cache_dir"] = cfg.provider.cache_dir ? json(cfg.provider.cache_dir->string()) : json(nullptr);
  return doc;
}

EngineConfig load_config_file(const std::filesystem::path& path, EngineConfig base) {
  const std::string text = read_file(path);
  return config_from_json(parse_json(text), std::move(base));
}

void apply_environment(EngineConfig& cfg) {
  if (const char* v = std::getenv("EMBED_URL"); v && *v) cfg.provider.http.url = v;
  if (const char* v = std::getenv("EMBED_MODEL"); v && *v) cfg.provider.http.model = v;
  if (const char* v = std::getenv("EMBED_TIMEOUT_MS"); v && *v) {
    char* end = nullptr;
    const long ms = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || ms <= 0) {
      throw Error(ErrorCode::InvalidArgument, "EMBED_TIMEOUT_MS must be a positive integer", {{"value", v}});
    }
    cfg.provider.http.timeout_ms = static_cast<int>(ms);
  }
  if (const char* v = std::getenv("CEG_CACHE_DIR"); v && *v) cfg.provider.cache_dir = v;
}

void validate(const EngineConfig& cfg) {
  validate(cfg.weights);
  validate(cfg.thresholds);
  if (!(cfg.epsilon_clip > 0.0 && cfg.epsilon_clip < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon_clip must lie in (0, 1)");
  }
  if (!(cfg.beta >= 0.0)) throw Error(ErrorCode::InvalidArgument, "beta must be nonnegative");
  if (cfg.provider.hash_dimension < 8) throw Error(ErrorCode::InvalidArgument, "hash_dimension must be >= 8");
  if (cfg.provider.http.timeout_ms <= 0 || cfg.provider.http.retries < 0) {
    throw Error(ErrorCode::InvalidArgument, "embed_timeout_ms must be positive and embed_retries nonnegative");
  }
}

std::shared_ptr<const SimilarityModel> make_similarity_model(const ProviderConfig& provider) {
  std::shared_ptr<const Embedder> embedder;
  switch (provider.kind) {
    case ProviderKind::Discrete:
      return std::make_shared<DiscreteSimilarity>();
    case ProviderKind::Hash:
      embedder = std::make_shared<HashEmbedder>(provider.hash_dimension);
      break;
    case ProviderKind::Http:
      embedder = std::make_shared<HttpEmbedder>(provider.http);
      break;
  }
  auto cached = std::make_shared<CachedEmbedder>(std::move(embedder), provider.cache_dir);
  return std::make_shared<EmbeddingSimilarity>(std::move(cached));
}

}  // namespace ceg
