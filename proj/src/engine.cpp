// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include "ceg/engine.hpp"

#include "ceg/error.hpp"
#include "ceg/grpo.hpp"

namespace ceg {

using nlohmann::json;

ScoreRequest parse_score_request(const json& doc, std::string_view text) {
  if (!doc.is_object()) throw_parse("wrong_type", "score request must be an object", "", text);
  if (!doc.contains("reference")) {
    throw_parse("missing_field", "missing required field 'reference'", "", text, {{"field", "reference"}});
  }
  if (!doc.contains("generated_triplets")) {
    throw_parse("missing_field", "missing required field 'generated_triplets'", "", text,
                {{"field", "generated_triplets"}});
  }
  ScoreRequest req{ceg_from_json(doc["reference"]), build_graph(triplets_from_json(doc, "/generated_triplets", text)),
                   std::nullopt, std::nullopt};
  if (doc.contains("response") && !doc["response"].is_null()) req.response = require_string(doc, "response", "", text);
  if (doc.contains("gold") && !doc["gold"].is_null()) req.gold = require_string(doc, "gold", "", text);
  return req;
}

Engine::Engine(EngineConfig config) : Engine(config, make_similarity_model(config.provider)) {}

Engine::Engine(EngineConfig config, std::shared_ptr<const SimilarityModel> model)
    : config_(std::move(config)), model_(std::move(model)) {
  validate(config_);
  if (!model_) throw Error(ErrorCode::InvalidArgument, "engine needs a similarity model");
}

CegExtraction Engine::extract(std::span<const Triplet> triplets, std::string_view answer) const {
  const EvidenceGraph graph = build_graph(triplets);
  const ConclusionChoice choice = select_conclusion_node(graph, answer, *model_);
  const EvidenceGraph sub = backward_causal_subgraph(graph, choice.node);
  EvidenceGraph reduced = transitive_reduction(sub);
  CegStats stats{graph.nodes().size(), reduced.nodes().size(), sub.edges().size() - reduced.edges().size()};
  return CegExtraction{CriticalEvidenceGraph{std::move(reduced), choice.node}, stats, choice.similarity};
}

json Engine::extract_document(std::span<const Triplet> triplets, std::string_view answer) const {
  const CegExtraction x = extract(triplets, answer);
  json doc = ceg_to_json(x.ceg, x.stats);
  doc["conclusion_similarity"] = x.conclusion_similarity;
  return doc;
}

RewardBreakdown Engine::score(const ScoreRequest& request) const {
  std::optional<std::string_view> response, gold;
  if (request.response) response = *request.response;
  if (request.gold) gold = *request.gold;
  return crp_reward(request.reference, request.generated, response, gold, *model_, config_.score_options());
}

std::string Engine::score_json(const json& request, std::string_view text) const {
  return dump(breakdown_to_json(score(parse_score_request(request, text))));
}

namespace {

std::vector<double> number_array(const json& doc, const std::string& key) {
  if (!doc.contains(key)) throw_parse("missing_field", "missing required field '" + key + "'", "", {}, {{"field", key}});
  const json& arr = doc[key];
  if (!arr.is_array()) throw_parse("wrong_type", key + " must be an array of numbers", "/" + key, {});
  std::vector<double> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw_parse("wrong_type", key + " must be an array of numbers", "/" + key + "/" + std::to_string(i), {});
    }
    out.push_back(arr[i].get<double>());
  }
  return out;
}

std::vector<std::vector<double>> number_matrix(const json& doc, const std::string& key) {
  if (!doc.contains(key)) throw_parse("missing_field", "missing required field '" + key + "'", "", {}, {{"field", key}});
  const json& arr = doc[key];
  if (!arr.is_array()) throw_parse("wrong_type", key + " must be an array of arrays", "/" + key, {});
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    json wrapper{{"row", arr[i]}};
    try {
      out.push_back(number_array(wrapper, "row"));
    } catch (const Error&) {
      throw_parse("wrong_type", key + " rows must be arrays of numbers", "/" + key + "/" + std::to_string(i), {});
    }
  }
  return out;
}

}  // namespace

json Engine::advantages(const json& request) const {
  if (!request.is_object()) throw_parse("wrong_type", "request must be an object", "", {});
  auto mode = config_.advantage_mode;
  if (request.contains("advantage_mode")) {
    if (!request["advantage_mode"].is_string()) throw_parse("wrong_type", "advantage_mode must be a string", "/advantage_mode", {});
    mode = grpo::parse_advantage_mode(request["advantage_mode"].get<std::string>());
  }
  const auto rewards = number_array(request, "rewards");
  return {{"advantages", grpo::group_advantages(rewards, mode)}};
}

json Engine::objective(const json& request) const {
  if (!request.is_object()) throw_parse("wrong_type", "request must be an object", "", {});
  grpo::Group g;
  g.rewards = number_array(request, "rewards");
  g.token_logps = number_matrix(request, "token_logps");
  g.old_logps = number_matrix(request, "old_logps");
  g.ref_logps = number_matrix(request, "ref_logps");
  g.epsilon_clip = config_.epsilon_clip;
  g.beta = config_.beta;
  g.advantage_mode = config_.advantage_mode;
  g.kl_estimator = config_.kl_estimator;
  if (request.contains("epsilon_clip")) {
    if (!request["epsilon_clip"].is_number()) throw_parse("wrong_type", "epsilon_clip must be a number", "/epsilon_clip", {});
    g.epsilon_clip = request["epsilon_clip"].get<double>();
  }
  if (request.contains("beta")) {
    if (!request["beta"].is_number()) throw_parse("wrong_type", "beta must be a number", "/beta", {});
    g.beta = request["beta"].get<double>();
  }
  const grpo::Objective obj = grpo::objective(g);
  return {{"objective", obj.value}, {"advantages", obj.advantages}, {"token_terms", obj.terms}};
}

}  // namespace ceg
