// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ceg/embedding.hpp"
#include "ceg/graph.hpp"

namespace ceg {

/// Row-major similarity scores, rows = generated elements, cols = reference.
struct SimilarityMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
};

/// Pairwise similarity between element strings. Thread-safe.
class SimilarityModel {
 public:
  virtual ~SimilarityModel() = default;
  virtual std::string name() const = 0;
  virtual SimilarityMatrix pairwise(std::span<const std::string> rows,
                                    std::span<const std::string> cols) const = 0;
};

/// Cosine similarity of provider embeddings.
class EmbeddingSimilarity final : public SimilarityModel {
 public:
  explicit EmbeddingSimilarity(std::shared_ptr<const Embedder> embedder);
  std::string name() const override { return embedder_->name(); }
  SimilarityMatrix pairwise(std::span<const std::string> rows,
                            std::span<const std::string> cols) const override;
  const Embedder& embedder() const { return *embedder_; }

 private:
  std::shared_ptr<const Embedder> embedder_;
};

/// 1 on normalized string equality, else 0. Turns every soft metric into
/// exact set arithmetic.
class DiscreteSimilarity final : public SimilarityModel {
 public:
  std::string name() const override { return "discrete"; }
  SimilarityMatrix pairwise(std::span<const std::string> rows,
                            std::span<const std::string> cols) const override;
};

/// S[i][j] = sim(gen_i, ref_j); normalized-equal pairs are pinned to 1.0
/// whatever the model says.
SimilarityMatrix similarity_matrix(std::span<const std::string> gen, std::span<const std::string> ref,
                                   const SimilarityModel& model);

struct Thresholds {
  double entity = 0.85;
  double relation = 0.80;
};

void validate(const Thresholds& thresholds);

struct ElementMap {
  std::map<std::string, std::set<std::string>> entity_map;
  std::map<std::string, std::set<std::string>> relation_map;
  Thresholds thresholds;
};

/// For each reference entity (relation), the generated entities (relations)
/// whose similarity reaches the entity (relation) threshold.
ElementMap build_element_map(const EvidenceGraph& gen, const EvidenceGraph& ref,
                             const SimilarityModel& model, const Thresholds& thresholds);

struct ConclusionChoice {
  NodeId node;
  double similarity = 0.0;
};

/// Node most similar to `answer`; ties go to the smallest node id.
ConclusionChoice select_conclusion_node(const EvidenceGraph& graph, std::string_view answer,
                                        const SimilarityModel& model);

}  // namespace ceg
