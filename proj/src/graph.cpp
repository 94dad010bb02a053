// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include "ceg/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "ceg/error.hpp"

namespace ceg {

void EvidenceGraph::add_triplet(const Triplet& t, std::optional<std::string> source) {
  nodes_.insert(t.subject);
  nodes_.insert(t.object);
  edges_.insert(t);
  if (source) provenance_[t].insert(std::move(*source));
}

void EvidenceGraph::add_node(std::string_view id) { nodes_.insert(normalize_concept(id)); }

std::set<std::string> EvidenceGraph::relations() const {
  std::set<std::string> out;
  for (const auto& e : edges_) out.insert(e.predicate);
  return out;
}

EvidenceGraph build_graph(std::span<const Triplet> triplets) {
  EvidenceGraph g;
  for (const auto& t : triplets) g.add_triplet(t);
  return g;
}

std::set<Triplet> ensemble_merge(const ExtractionBundle& bundle) {
  const std::size_t n = bundle.extractions.size();
  if (bundle.quorum == 0 || bundle.quorum > n) {
    throw Error(ErrorCode::InvalidQuorum, "quorum must be in [1, number of extractor sets]",
                {{"quorum", bundle.quorum}, {"extractors", n}});
  }
  std::map<Triplet, std::size_t> votes;
  for (const auto& extraction : bundle.extractions) {
    // One vote per extractor, however often it repeats a triplet.
    std::set<Triplet> distinct(extraction.begin(), extraction.end());
    for (const auto& t : distinct) ++votes[t];
  }
  std::set<Triplet> out;
  for (const auto& [t, count] : votes) {
    if (count >= bundle.quorum) out.insert(t);
  }
  return out;
}

namespace {

// Integer view of an EvidenceGraph. Node and edge order follow the sorted
// containers of the source graph.
struct IndexedGraph {
  std::vector<NodeId> names;
  std::unordered_map<NodeId, std::size_t> index;
  std::vector<const Triplet*> edges;
  std::vector<std::size_t> src, dst;
  std::vector<std::vector<std::size_t>> out_edges, in_edges;

  explicit IndexedGraph(const EvidenceGraph& g) {
    names.assign(g.nodes().begin(), g.nodes().end());
    for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], i);
    out_edges.resize(names.size());
    in_edges.resize(names.size());
    for (const auto& t : g.edges()) {
      const std::size_t e = edges.size();
      edges.push_back(&t);
      src.push_back(index.at(t.subject));
      dst.push_back(index.at(t.object));
      out_edges[src.back()].push_back(e);
      in_edges[dst.back()].push_back(e);
    }
  }

  // Directed reachability over alive edges, ignoring edge `skip`.
  bool path_exists(std::size_t from, std::size_t to, const std::vector<char>& alive,
                   std::size_t skip) const {
    std::vector<char> seen(names.size(), 0);
    std::deque<std::size_t> queue{from};
    seen[from] = 1;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t e : out_edges[u]) {
        if (e == skip || !alive[e]) continue;
        const std::size_t w = dst[e];
        if (w == to) return true;
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    return false;
  }
};

std::optional<std::vector<NodeId>> find_cycle(const IndexedGraph& ig) {
  enum : char { White, Gray, Black };
  const std::size_t n = ig.names.size();
  std::vector<char> color(n, White);
  struct Frame {
    std::size_t node;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (color[root] != White) continue;
    std::vector<Frame> stack{{root, 0}};
    color[root] = Gray;
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto& out = ig.out_edges[top.node];
      if (top.next == out.size()) {
        color[top.node] = Black;
        stack.pop_back();
        continue;
      }
      const std::size_t w = ig.dst[out[top.next++]];
      if (color[w] == Gray) {
        std::vector<NodeId> cycle;
        auto it = std::find_if(stack.begin(), stack.end(), [w](const Frame& f) { return f.node == w; });
        for (; it != stack.end(); ++it) cycle.push_back(ig.names[it->node]);
        cycle.push_back(ig.names[w]);
        return cycle;
      }
      if (color[w] == White) {
        color[w] = Gray;
        stack.push_back({w, 0});
      }
    }
  }
  return std::nullopt;
}

std::size_t require_node(const IndexedGraph& ig, const NodeId& id) {
  auto it = ig.index.find(id);
  if (it == ig.index.end()) {
    throw Error(ErrorCode::UnknownNode, "node '" + id + "' is not in the graph", {{"node", id}});
  }
  return it->second;
}

}  // namespace

EvidenceGraph backward_causal_subgraph(const EvidenceGraph& graph, const NodeId& conclusion) {
  const IndexedGraph ig(graph);
  const std::size_t root = require_node(ig, conclusion);

  EvidenceGraph sub;
  sub.add_node(conclusion);
  std::vector<char> visited(ig.names.size(), 0);
  visited[root] = 1;
  std::deque<std::size_t> queue{root};
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t e : ig.in_edges[u]) {
      const std::size_t p = ig.src[e];
      if (!visited[p]) {
        visited[p] = 1;
        queue.push_back(p);
      }
      sub.add_triplet(*ig.edges[e]);
    }
  }
  return sub;
}

std::optional<std::vector<NodeId>> detect_cycle(const EvidenceGraph& graph) {
  return find_cycle(IndexedGraph(graph));
}

EvidenceGraph transitive_reduction(const EvidenceGraph& graph) {
  const IndexedGraph ig(graph);
  if (auto cycle = find_cycle(ig)) {
    throw Error(ErrorCode::CyclicGraph, "transitive reduction requires an acyclic graph",
                {{"cycle", *cycle}});
  }
  std::vector<char> alive(ig.edges.size(), 1);
  for (std::size_t e = 0; e < ig.edges.size(); ++e) {
    if (ig.path_exists(ig.src[e], ig.dst[e], alive, e)) alive[e] = 0;
  }
  EvidenceGraph out;
  for (const auto& n : graph.nodes()) out.add_node(n);
  for (std::size_t e = 0; e < ig.edges.size(); ++e) {
    if (alive[e]) out.add_triplet(*ig.edges[e]);
  }
  return out;
}

std::optional<std::string> check_ceg(const EvidenceGraph& graph, const NodeId& conclusion) {
  const IndexedGraph ig(graph);
  auto it = ig.index.find(conclusion);
  if (it == ig.index.end()) return "conclusion '" + conclusion + "' is not a node of the graph";
  if (find_cycle(ig)) return "graph contains a directed cycle";

  std::vector<char> reaches(ig.names.size(), 0);
  reaches[it->second] = 1;
  std::deque<std::size_t> queue{it->second};
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t e : ig.in_edges[u]) {
      if (!reaches[ig.src[e]]) {
        reaches[ig.src[e]] = 1;
        queue.push_back(ig.src[e]);
      }
    }
  }
  for (std::size_t i = 0; i < ig.names.size(); ++i) {
    if (!reaches[i]) return "node '" + ig.names[i] + "' has no path to the conclusion";
  }

  const std::vector<char> alive(ig.edges.size(), 1);
  for (std::size_t e = 0; e < ig.edges.size(); ++e) {
    if (ig.path_exists(ig.src[e], ig.dst[e], alive, e)) {
      const Triplet& t = *ig.edges[e];
      return "edge (" + t.subject + ", " + t.predicate + ", " + t.object + ") is implied by another path";
    }
  }
  return std::nullopt;
}

CriticalEvidenceGraph make_ceg(EvidenceGraph graph, const NodeId& conclusion) {
  if (auto problem = check_ceg(graph, conclusion)) {
    throw Error(ErrorCode::InvalidCeg, "invalid critical evidence graph: " + *problem,
                {{"conclusion", conclusion}});
  }
  return CriticalEvidenceGraph{std::move(graph), conclusion};
}

CriticalEvidenceGraph extract_ceg(const EvidenceGraph& graph, const NodeId& conclusion) {
  return CriticalEvidenceGraph{transitive_reduction(backward_causal_subgraph(graph, conclusion)), conclusion};
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace

std::vector<Component> connected_components(const std::set<Triplet>& triplets) {
  std::map<NodeId, std::size_t> index;
  for (const auto& t : triplets) {
    index.emplace(t.subject, 0);
    index.emplace(t.object, 0);
  }
  std::size_t next = 0;
  for (auto& [name, i] : index) i = next++;

  DisjointSets sets(index.size());
  for (const auto& t : triplets) sets.unite(index.at(t.subject), index.at(t.object));

  std::map<std::size_t, Component> by_root;
  for (const auto& [name, i] : index) by_root[sets.find(i)].nodes.insert(name);
  for (const auto& t : triplets) by_root[sets.find(index.at(t.subject))].triplets.insert(t);

  std::vector<Component> out;
  out.reserve(by_root.size());
  for (auto& [root, c] : by_root) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), [](const Component& a, const Component& b) {
    if (a.triplets.size() != b.triplets.size()) return a.triplets.size() > b.triplets.size();
    return *a.nodes.begin() < *b.nodes.begin();
  });
  return out;
}

double graph_jaccard(const EvidenceGraph& a, const EvidenceGraph& b) {
  std::size_t common = 0;
  for (const auto& t : a.edges()) common += b.contains_edge(t) ? 1 : 0;
  const std::size_t total = a.edges().size() + b.edges().size() - common;
  if (total == 0) return 1.0;
  return static_cast<double>(common) / static_cast<double>(total);
}

}  // namespace ceg
