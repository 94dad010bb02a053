// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ceg/triplet.hpp"

namespace ceg {

/// Directed graph over normalized concept nodes. Edges are distinct triplets;
/// parallel edges between the same pair survive when predicates differ.
/// Both containers are ordered, so iteration is lexicographic by
/// (subject, predicate, object).
class EvidenceGraph {
 public:
  EvidenceGraph() = default;

  /// Adds both endpoints and the edge. Identical triplets collapse.
  void add_triplet(const Triplet& t, std::optional<std::string> source = std::nullopt);
  /// Adds an isolated node; `id` is normalized.
  void add_node(std::string_view id);

  const std::set<NodeId>& nodes() const noexcept { return nodes_; }
  const std::set<Triplet>& edges() const noexcept { return edges_; }
  const std::map<Triplet, std::set<std::string>>& provenance() const noexcept { return provenance_; }

  bool contains_node(const NodeId& id) const { return nodes_.contains(id); }
  bool contains_edge(const Triplet& t) const { return edges_.contains(t); }
  bool empty() const noexcept { return nodes_.empty(); }

  /// Distinct predicates, sorted.
  std::set<std::string> relations() const;

  friend bool operator==(const EvidenceGraph& a, const EvidenceGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::set<NodeId> nodes_;
  std::set<Triplet> edges_;
  std::map<Triplet, std::set<std::string>> provenance_;
};

EvidenceGraph build_graph(std::span<const Triplet> triplets);

/// One triplet set per extractor plus the vote threshold.
struct ExtractionBundle {
  std::vector<std::vector<Triplet>> extractions;
  std::size_t quorum = 2;
};

/// Keeps a triplet iff at least `quorum` extractor sets contain it.
std::set<Triplet> ensemble_merge(const ExtractionBundle& bundle);

/// Reverse breadth-first traversal from `conclusion`: all ancestors plus every
/// edge entering a visited node.
EvidenceGraph backward_causal_subgraph(const EvidenceGraph& graph, const NodeId& conclusion);

/// A closed node sequence [v0, ..., vk, v0] forming a directed cycle, if any.
std::optional<std::vector<NodeId>> detect_cycle(const EvidenceGraph& graph);

/// Removes, in sorted edge order, every edge whose endpoints stay connected by
/// another directed path in the current edge set. Throws CyclicGraph (with
/// the witness in detail["cycle"]) on cyclic input.
EvidenceGraph transitive_reduction(const EvidenceGraph& graph);

struct CriticalEvidenceGraph {
  EvidenceGraph graph;
  NodeId conclusion;
};

/// Checks conclusion membership, acyclicity, conclusion reachability from
/// every node and transitive reduction. Returns a description of the first
/// violated invariant.
std::optional<std::string> check_ceg(const EvidenceGraph& graph, const NodeId& conclusion);

/// Validating constructor: throws InvalidCeg on any check_ceg violation.
CriticalEvidenceGraph make_ceg(EvidenceGraph graph, const NodeId& conclusion);

CriticalEvidenceGraph extract_ceg(const EvidenceGraph& graph, const NodeId& conclusion);

struct Component {
  std::set<NodeId> nodes;
  std::set<Triplet> triplets;
};

/// Undirected components over triplet endpoints, sorted by triplet count
/// descending then smallest node id ascending.
std::vector<Component> connected_components(const std::set<Triplet>& triplets);

/// |E1 ∩ E2| / |E1 ∪ E2|; two empty edge sets score 1.
double graph_jaccard(const EvidenceGraph& a, const EvidenceGraph& b);

}  // namespace ceg
