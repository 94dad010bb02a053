// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include "ceg/similarity.hpp"

#include <cmath>
#include <unordered_map>

#include "ceg/error.hpp"

namespace ceg {

EmbeddingSimilarity::EmbeddingSimilarity(std::shared_ptr<const Embedder> embedder)
    : embedder_(std::move(embedder)) {
  if (!embedder_) throw Error(ErrorCode::InvalidArgument, "embedding similarity needs a provider");
}

SimilarityMatrix EmbeddingSimilarity::pairwise(std::span<const std::string> rows,
                                               std::span<const std::string> cols) const {
  std::vector<std::string> unique;
  std::unordered_map<std::string, std::size_t> slot;
  auto intern = [&](const std::string& s) {
    auto [it, inserted] = slot.emplace(s, unique.size());
    if (inserted) unique.push_back(s);
    return it->second;
  };
  std::vector<std::size_t> row_ids, col_ids;
  for (const auto& r : rows) row_ids.push_back(intern(r));
  for (const auto& c : cols) col_ids.push_back(intern(c));

  const auto vectors = embedder_->embed(unique);
  if (vectors.size() != unique.size()) {
    throw Error(ErrorCode::ProviderUnavailable, "provider returned the wrong number of vectors");
  }

  SimilarityMatrix m{rows.size(), cols.size(), std::vector<double>(rows.size() * cols.size())};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      m.at(i, j) = cosine_similarity(vectors[row_ids[i]], vectors[col_ids[j]]);
    }
  }
  return m;
}

SimilarityMatrix DiscreteSimilarity::pairwise(std::span<const std::string> rows,
                                              std::span<const std::string> cols) const {
  SimilarityMatrix m{rows.size(), cols.size(), std::vector<double>(rows.size() * cols.size())};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string r = normalize_text(rows[i]);
    for (std::size_t j = 0; j < cols.size(); ++j) m.at(i, j) = r == normalize_text(cols[j]) ? 1.0 : 0.0;
  }
  return m;
}

SimilarityMatrix similarity_matrix(std::span<const std::string> gen, std::span<const std::string> ref,
                                   const SimilarityModel& model) {
  SimilarityMatrix m = model.pairwise(gen, ref);
  if (m.rows != gen.size() || m.cols != ref.size() || m.values.size() != gen.size() * ref.size()) {
    throw Error(ErrorCode::Internal, "similarity model returned a matrix of the wrong shape");
  }
  for (std::size_t i = 0; i < gen.size(); ++i) {
    const std::string g = normalize_text(gen[i]);
    for (std::size_t j = 0; j < ref.size(); ++j) {
      if (g == normalize_text(ref[j])) m.at(i, j) = 1.0;
    }
  }
  return m;
}

void validate(const Thresholds& t) {
  auto ok = [](double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; };
  if (!ok(t.entity) || !ok(t.relation)) {
    throw Error(ErrorCode::InvalidArgument, "similarity thresholds must lie in [0, 1]",
                {{"theta_entity", t.entity}, {"theta_relation", t.relation}});
  }
}

namespace {

std::map<std::string, std::set<std::string>> threshold_map(const std::set<std::string>& gen,
                                                           const std::set<std::string>& ref,
                                                           const SimilarityModel& model, double theta) {
  const std::vector<std::string> g(gen.begin(), gen.end());
  const std::vector<std::string> r(ref.begin(), ref.end());
  std::map<std::string, std::set<std::string>> out;
  for (const auto& key : r) out[key];
  if (g.empty() || r.empty()) return out;

  const SimilarityMatrix s = similarity_matrix(g, r, model);
  for (std::size_t j = 0; j < r.size(); ++j) {
    auto& targets = out[r[j]];
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (s.at(i, j) >= theta) targets.insert(g[i]);
    }
  }
  return out;
}

}  // namespace

ElementMap build_element_map(const EvidenceGraph& gen, const EvidenceGraph& ref,
                             const SimilarityModel& model, const Thresholds& thresholds) {
  validate(thresholds);
  ElementMap map;
  map.thresholds = thresholds;
  map.entity_map = threshold_map(gen.nodes(), ref.nodes(), model, thresholds.entity);
  map.relation_map = threshold_map(gen.relations(), ref.relations(), model, thresholds.relation);
  return map;
}

ConclusionChoice select_conclusion_node(const EvidenceGraph& graph, std::string_view answer,
                                        const SimilarityModel& model) {
  if (graph.empty()) throw Error(ErrorCode::EmptyGraph, "cannot select a conclusion in an empty graph");
  const std::vector<std::string> nodes(graph.nodes().begin(), graph.nodes().end());
  const std::vector<std::string> target{normalize_concept(answer)};
  const SimilarityMatrix s = similarity_matrix(nodes, target, model);

  ConclusionChoice best{nodes[0], s.at(0, 0)};
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (s.at(i, 0) > best.similarity) best = {nodes[i], s.at(i, 0)};
  }
  return best;
}

}  // namespace ceg
