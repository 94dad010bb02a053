// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include "ceg/reward.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <utility>
#include <vector>

#include "ceg/error.hpp"

namespace ceg {

void validate(const RewardWeights& w) {
  auto bad = [](double x) { return !std::isfinite(x) || x < 0.0; };
  if (bad(w.lambda_node) || bad(w.lambda_struct) || bad(w.lambda_chain) || bad(w.w_reason) ||
      bad(w.w_answer) || bad(w.w_format)) {
    throw Error(ErrorCode::InvalidWeights, "reward weights must be finite and nonnegative");
  }
  const double lambda_sum = w.lambda_node + w.lambda_struct + w.lambda_chain;
  const double w_sum = w.w_reason + w.w_answer + w.w_format;
  if (std::abs(lambda_sum - 1.0) > 1e-9 || std::abs(w_sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidWeights, "each reward weight triple must sum to 1",
                {{"lambda_sum", lambda_sum}, {"w_sum", w_sum}});
  }
}

namespace {

// Weighted sum with error-free product and sum transformations, rounded once
// at the end. Keeps exact-weight cases exact (0.3 + 0.6 + 0.1 == 1).
double weighted_sum(std::initializer_list<std::pair<double, double>> terms) {
  double sum = 0.0;
  double err = 0.0;
  for (const auto& [w, x] : terms) {
    const double p = w * x;
    const double p_err = std::fma(w, x, -p);
    const double s = sum + p;
    const double z = s - sum;
    err += (sum - (s - z)) + (p - z) + p_err;
    sum = s;
  }
  return sum + err;
}

void require_nodes(const CriticalEvidenceGraph& ref) {
  if (ref.graph.nodes().empty()) {
    throw Error(ErrorCode::EmptyReference, "reference graph has no nodes");
  }
}

void require_edges(const CriticalEvidenceGraph& ref) {
  if (ref.graph.edges().empty()) {
    throw Error(ErrorCode::EmptyReference, "reference graph has no triplets");
  }
}

}  // namespace

double node_coverage(const CriticalEvidenceGraph& ref, const EvidenceGraph& gen, const SimilarityModel& model) {
  require_nodes(ref);
  if (gen.nodes().empty()) return 0.0;
  const std::vector<std::string> g(gen.nodes().begin(), gen.nodes().end());
  const std::vector<std::string> r(ref.graph.nodes().begin(), ref.graph.nodes().end());
  const SimilarityMatrix s = similarity_matrix(g, r, model);

  double total = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    double best = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) best = std::max(best, std::clamp(s.at(i, j), 0.0, 1.0));
    total += best;
  }
  return total / static_cast<double>(r.size());
}

StructuralResult structural_correctness(const CriticalEvidenceGraph& ref, const EvidenceGraph& gen,
                                        const ElementMap& map) {
  require_edges(ref);
  static const std::set<std::string> kNone;
  auto lookup = [](const std::map<std::string, std::set<std::string>>& m, const std::string& key)
      -> const std::set<std::string>& {
    auto it = m.find(key);
    return it == m.end() ? kNone : it->second;
  };

  StructuralResult out;
  for (const auto& t : ref.graph.edges()) {
    const auto& subjects = lookup(map.entity_map, t.subject);
    const auto& objects = lookup(map.entity_map, t.object);
    const auto& predicates = lookup(map.relation_map, t.predicate);
    if (subjects.empty() || objects.empty() || predicates.empty()) continue;
    const bool hit = std::any_of(gen.edges().begin(), gen.edges().end(), [&](const Triplet& g) {
      return subjects.contains(g.subject) && objects.contains(g.object) && predicates.contains(g.predicate);
    });
    if (hit) out.recalled.insert(t);
  }
  out.score = static_cast<double>(out.recalled.size()) / static_cast<double>(ref.graph.edges().size());
  return out;
}

ChainResult chain_completeness_detail(const CriticalEvidenceGraph& ref, const std::set<Triplet>& recalled) {
  require_edges(ref);
  for (const auto& t : recalled) {
    if (!ref.graph.contains_edge(t)) {
      throw Error(ErrorCode::InvalidArgument, "recalled triplet is not part of the reference graph",
                  {{"triplet", {t.subject, t.predicate, t.object}}});
    }
  }
  const auto components = connected_components(recalled);
  ChainResult out;
  if (!components.empty()) out.largest_component_size = components.front().triplets.size();
  out.score = static_cast<double>(out.largest_component_size) / static_cast<double>(ref.graph.edges().size());
  return out;
}

double chain_completeness(const CriticalEvidenceGraph& ref, const std::set<Triplet>& recalled) {
  return chain_completeness_detail(ref, recalled).score;
}

double reasoning_reward(double r_node, double r_struct, double r_chain, const RewardWeights& w) {
  validate(w);
  for (double x : {r_node, r_struct, r_chain}) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "process scores must lie in [0, 1]", {{"value", x}});
    }
  }
  const double r = weighted_sum({{w.lambda_node, r_node}, {w.lambda_struct, r_struct}, {w.lambda_chain, r_chain}});
  return std::clamp(r, 0.0, 1.0);
}

double final_reward(double r_reason, int r_answer, int r_format, const RewardWeights& w) {
  validate(w);
  const double r = weighted_sum({{w.w_reason, r_reason},
                                 {w.w_answer, static_cast<double>(r_answer)},
                                 {w.w_format, static_cast<double>(r_format)}});
  return std::clamp(r, 0.0, 1.0);
}

namespace {

constexpr std::string_view kBoxOpen = "\\boxed{";

struct BoxSpan {
  std::size_t start;    // position of the backslash
  std::size_t content;  // first byte after '{'
  std::optional<std::size_t> close;  // position of the matching '}'
};

std::vector<BoxSpan> find_boxes(std::string_view text) {
  std::vector<BoxSpan> out;
  for (std::size_t pos = text.find(kBoxOpen); pos != std::string_view::npos;
       pos = text.find(kBoxOpen, pos + 1)) {
    BoxSpan span{pos, pos + kBoxOpen.size(), std::nullopt};
    int depth = 1;
    for (std::size_t i = span.content; i < text.size(); ++i) {
      if (text[i] == '{') {
        ++depth;
      } else if (text[i] == '}' && --depth == 0) {
        span.close = i;
        break;
      }
    }
    out.push_back(span);
  }
  return out;
}

}  // namespace

std::optional<std::string> last_boxed(std::string_view response) {
  const auto boxes = find_boxes(response);
  for (auto it = boxes.rbegin(); it != boxes.rend(); ++it) {
    if (it->close) return std::string(response.substr(it->content, *it->close - it->content));
  }
  return std::nullopt;
}

AnswerCheck answer_reward(std::string_view response, std::string_view gold, const AnswerJudge& judge) {
  AnswerCheck out;
  out.extracted = last_boxed(response);
  if (!out.extracted) return out;
  out.missing = false;
  const std::string got = normalize_text(*out.extracted);
  const std::string want = normalize_text(gold);
  if (want.empty()) return out;
  const bool correct = judge ? judge(got, want) : got == want;
  out.score = correct ? 1 : 0;
  return out;
}

int format_reward(std::string_view response) {
  const auto boxes = find_boxes(response);
  if (boxes.size() != 1 || !boxes.front().close) return 0;
  return normalize_text(response.substr(0, boxes.front().start)).empty() ? 0 : 1;
}

RewardBreakdown crp_reward(const CriticalEvidenceGraph& ref, const EvidenceGraph& gen,
                           std::optional<std::string_view> response, std::optional<std::string_view> gold,
                           const SimilarityModel& model, const ScoreOptions& options) {
  validate(options.weights);
  require_nodes(ref);
  require_edges(ref);

  RewardBreakdown b;
  b.r_node = node_coverage(ref, gen, model);
  const ElementMap map = build_element_map(gen, ref.graph, model, options.thresholds);
  auto structural = structural_correctness(ref, gen, map);
  b.r_struct = structural.score;
  const ChainResult chain = chain_completeness_detail(ref, structural.recalled);
  b.r_chain = chain.score;
  b.largest_component_size = chain.largest_component_size;
  b.recalled_triplets = std::move(structural.recalled);
  b.r_reason = reasoning_reward(b.r_node, b.r_struct, b.r_chain, options.weights);

  if (response) {
    if (gold) {
      const AnswerCheck answer = answer_reward(*response, *gold, options.judge);
      b.r_answer = answer.score;
      b.answer_missing = answer.missing;
    } else {
      b.answer_missing = !last_boxed(*response).has_value();
    }
    b.r_format = format_reward(*response);
  }
  b.r_crp = final_reward(b.r_reason, b.r_answer, b.r_format, options.weights);
  return b;
}

}  // namespace ceg
