// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <set>
#include <string>
#include <vector>

#include "ceg/error.hpp"
#include "ceg/graph.hpp"
#include "ceg/wire.hpp"
#include "ceg/config.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ceg;
namespace T = ceg::testing;

namespace {

Triplet tr(const char* s, const char* o, const char* p = "causes") { return Triplet{s, p, o}; }

EvidenceGraph graph_of(std::initializer_list<Triplet> ts) {
  std::vector<Triplet> v(ts);
  return build_graph(v);
}

EvidenceGraph graph_of(const std::set<Triplet>& ts, std::size_t isolated_upto = 0) {
  EvidenceGraph g;
  for (std::size_t i = 0; i < isolated_upto; ++i) g.add_node(T::node_name(i));
  for (const auto& t : ts) g.add_triplet(t);
  return g;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Internal;
}

// Closure equality plus minimality, checked against the matrix oracle.
void check_reduction(const std::set<Triplet>& input, std::size_t n) {
  const auto names = T::node_names(n);
  const EvidenceGraph out = transitive_reduction(graph_of(input, n));
  const auto want = T::closure_of(names, input);
  REQUIRE(T::closure_of(names, out.edges()) == want);
  for (const auto& e : out.edges()) {
    REQUIRE(input.contains(e));
    auto fewer = out.edges();
    fewer.erase(e);
    REQUIRE(T::closure_of(names, fewer) != want);
  }
  CHECK(out.nodes() == graph_of(input, n).nodes());
}

}  // namespace

TEST_CASE("normalize_concept") {
  CHECK(normalize_concept("  Breast   Mass ") == "breast mass");
  CHECK(normalize_concept("breast mass") == "breast mass");
  CHECK(normalize_concept("HER2/neu receptor") == "her2/neu receptor");
  CHECK(normalize_concept("a\t\nb") == "a b");
  CHECK(code_of([] { normalize_concept(" \t "); }) == ErrorCode::EmptyConcept);
  CHECK(code_of([] { normalize_concept(""); }) == ErrorCode::EmptyConcept);
  CHECK(normalize_text("") == "");
}

TEST_CASE("make_triplet normalizes all three slots") {
  const Triplet t = make_triplet(" Patient ", "Underwent  a", "BIOPSY");
  CHECK(t == Triplet{"patient", "underwent a", "biopsy"});
  CHECK(code_of([] { make_triplet("a", " ", "b"); }) == ErrorCode::EmptyConcept);
}

TEST_CASE("build_graph") {
  CHECK(build_graph({}).nodes().empty());
  CHECK(build_graph({}).edges().empty());

  const auto g = graph_of({tr("a", "b", "p"), tr("a", "b", "p")});
  CHECK(g.nodes().size() == 2);
  CHECK(g.edges().size() == 1);

  const auto parallel = graph_of({tr("a", "b", "p"), tr("a", "b", "q")});
  CHECK(parallel.edges().size() == 2);
  CHECK(parallel.relations() == std::set<std::string>{"p", "q"});

  const auto doc = parse_triplet_document(read_file(CEG_TEST_FIXTURES "/correct_output_example.json"));
  const auto worked = build_graph(doc);
  CHECK(worked.nodes().size() == 12);
  CHECK(worked.edges().size() == 12);
}

TEST_CASE("ensemble_merge quorum rule") {
  const Triplet x = tr("x", "y");
  const Triplet other = tr("u", "v");
  SUBCASE("three of three") {
    CHECK(ensemble_merge({{{x}, {x}, {x}}, 2}) == std::set<Triplet>{x});
  }
  SUBCASE("one of three") {
    CHECK(ensemble_merge({{{x}, {other}, {}}, 2}).empty());
  }
  SUBCASE("exactly two of three") {
    CHECK(ensemble_merge({{{x}, {x, other}, {}}, 2}) == std::set<Triplet>{x});
  }
  SUBCASE("repeats within one extractor count once") {
    CHECK(ensemble_merge({{{x, x}, {}, {}}, 2}).empty());
  }
  SUBCASE("invalid quorum") {
    CHECK(code_of([&] { ensemble_merge({{{x}, {x}}, 3}); }) == ErrorCode::InvalidQuorum);
    CHECK(code_of([&] { ensemble_merge({{{x}}, 0}); }) == ErrorCode::InvalidQuorum);
    CHECK(code_of([&] { ensemble_merge({{}, 1}); }) == ErrorCode::InvalidQuorum);
  }
}

TEST_CASE("ensemble_merge properties") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> extractors(1, 5);
  for (int round = 0; round < 300; ++round) {
    ExtractionBundle bundle;
    const std::size_t n = extractors(rng);
    std::set<Triplet> all;
    for (std::size_t i = 0; i < n; ++i) {
      auto ts = T::random_triplets(rng, 6, 5, 2);
      all.insert(ts.begin(), ts.end());
      bundle.extractions.emplace_back(ts.begin(), ts.end());
    }
    std::uniform_int_distribution<std::size_t> q(1, n);
    bundle.quorum = q(rng);
    const auto merged = ensemble_merge(bundle);
    for (const auto& t : merged) CHECK(all.contains(t));

    ExtractionBundle one = bundle;
    one.quorum = 1;
    CHECK(ensemble_merge(one) == all);

    ExtractionBundle more = bundle;
    auto extra = T::random_triplets(rng, 6, 5, 2);
    more.extractions.emplace_back(extra.begin(), extra.end());
    const auto grown = ensemble_merge(more);
    for (const auto& t : merged) CHECK(grown.contains(t));
  }
}

TEST_CASE("backward_causal_subgraph") {
  SUBCASE("chain") {
    const auto g = backward_causal_subgraph(graph_of({tr("a", "b"), tr("b", "c")}), "c");
    CHECK(g.nodes().size() == 3);
    CHECK(g.edges().size() == 2);
  }
  SUBCASE("isolated conclusion") {
    const auto g = backward_causal_subgraph(graph_of({tr("c", "d")}), "c");
    CHECK(g.nodes() == std::set<std::string>{"c"});
    CHECK(g.edges().empty());
  }
  SUBCASE("sibling branches and an unrelated edge") {
    const auto g = backward_causal_subgraph(graph_of({tr("a", "c"), tr("b", "c"), tr("c", "d"), tr("x", "y")}), "c");
    CHECK(g.nodes() == std::set<std::string>{"a", "b", "c"});
    CHECK(g.edges() == std::set<Triplet>{tr("a", "c"), tr("b", "c")});
  }
  SUBCASE("unknown conclusion") {
    CHECK(code_of([] { backward_causal_subgraph(graph_of({tr("a", "b")}), "z"); }) == ErrorCode::UnknownNode);
  }
}

TEST_CASE("backward_causal_subgraph agrees with reverse-BFS oracle") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 300; ++round) {
    const auto ts = T::random_triplets(rng, 10, 7, 2);
    if (ts.empty()) continue;
    const auto g = build_graph(std::vector<Triplet>(ts.begin(), ts.end()));
    const NodeId target = *std::next(g.nodes().begin(), static_cast<long>(round % g.nodes().size()));
    const auto sub = backward_causal_subgraph(g, target);
    const auto want_nodes = T::ancestors(ts, target);
    CHECK(sub.nodes() == want_nodes);
    std::set<Triplet> want_edges;
    for (const auto& t : ts)
      if (want_nodes.contains(t.object)) want_edges.insert(t);
    CHECK(sub.edges() == want_edges);
    for (const auto& n : sub.nodes()) CHECK(T::reaches(sub.edges(), n, target));
  }
}

TEST_CASE("detect_cycle") {
  CHECK_FALSE(detect_cycle(graph_of({tr("a", "b"), tr("b", "c")})).has_value());

  const auto two = detect_cycle(graph_of({tr("a", "b"), tr("b", "a")}));
  REQUIRE(two.has_value());
  CHECK(*two == std::vector<std::string>{"a", "b", "a"});

  const auto three = detect_cycle(graph_of({tr("a", "b"), tr("b", "c"), tr("c", "a"), tr("c", "d")}));
  REQUIRE(three.has_value());
  REQUIRE(three->size() >= 3);
  CHECK(three->front() == three->back());
  for (const auto& n : *three) CHECK(std::set<std::string>{"a", "b", "c"}.contains(n));

  CHECK(detect_cycle(graph_of({tr("a", "a")})).has_value());
}

TEST_CASE("detect_cycle witness is a real cycle") {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 300; ++round) {
    const auto ts = T::random_triplets(rng, 8, 6, 1);
    const auto g = build_graph(std::vector<Triplet>(ts.begin(), ts.end()));
    const auto cycle = detect_cycle(g);
    bool cyclic = false;
    for (const auto& t : ts) cyclic = cyclic || T::reaches(ts, t.object, t.subject);
    CHECK(cycle.has_value() == cyclic);
    if (cycle) {
      for (std::size_t i = 0; i + 1 < cycle->size(); ++i) {
        const bool linked = std::any_of(ts.begin(), ts.end(), [&](const Triplet& t) {
          return t.subject == (*cycle)[i] && t.object == (*cycle)[i + 1];
        });
        CHECK(linked);
      }
    }
  }
}

TEST_CASE("transitive_reduction examples") {
  CHECK(transitive_reduction(graph_of({tr("a", "b"), tr("b", "c"), tr("a", "c")})).edges() ==
        std::set<Triplet>{tr("a", "b"), tr("b", "c")});
  const auto chain = graph_of({tr("a", "b"), tr("b", "c")});
  CHECK(transitive_reduction(chain) == chain);

  try {
    transitive_reduction(graph_of({tr("a", "b"), tr("b", "a")}));
    FAIL("expected CyclicGraph");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CyclicGraph);
    CHECK(e.detail().at("cycle") == nlohmann::json::array({"a", "b", "a"}));
  }
}

TEST_CASE("transitive_reduction keeps one of a set of parallel edges") {
  const auto g = transitive_reduction(graph_of({tr("a", "b", "p"), tr("a", "b", "q")}));
  CHECK(g.edges() == std::set<Triplet>{tr("a", "b", "q")});
}

TEST_CASE("transitive_reduction exhaustive over labeled DAGs up to four nodes") {
  std::size_t dags = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) pairs.emplace_back(i, j);
    for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
      std::set<Triplet> edges;
      for (std::size_t b = 0; b < pairs.size(); ++b)
        if (mask >> b & 1) edges.insert(Triplet{T::node_name(pairs[b].first), "r", T::node_name(pairs[b].second)});
      const auto c = T::closure_of(T::node_names(n), edges);
      bool acyclic = true;
      for (std::size_t i = 0; i < n; ++i) acyclic = acyclic && !c[i][i];
      if (!acyclic) continue;
      ++dags;
      check_reduction(edges, n);
    }
  }
  CHECK(dags == 1 + 3 + 25 + 543);
}

TEST_CASE("transitive_reduction random DAGs up to eight nodes") {
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  std::uniform_real_distribution<double> density(0.1, 0.9);
  for (int round = 0; round < 1000; ++round) {
    const std::size_t n = size(rng);
    const auto edges = T::random_dag(rng, n, density(rng), 3);
    check_reduction(edges, n);
    const auto once = transitive_reduction(graph_of(edges, n));
    CHECK(transitive_reduction(once) == once);
  }
}

TEST_CASE("extract_ceg") {
  SUBCASE("shortcut pruned") {
    const auto ceg = extract_ceg(graph_of({tr("a", "b"), tr("b", "c"), tr("a", "c")}), "c");
    CHECK(ceg.graph.edges() == std::set<Triplet>{tr("a", "b"), tr("b", "c")});
    CHECK(ceg.conclusion == "c");
  }
  SUBCASE("single node") {
    EvidenceGraph g;
    g.add_node("solo");
    const auto ceg = extract_ceg(g, "solo");
    CHECK(ceg.graph.nodes().size() == 1);
    CHECK(ceg.graph.edges().empty());
  }
  SUBCASE("unrelated component and shortcut") {
    const auto ceg = extract_ceg(graph_of({tr("a", "b"), tr("b", "d"), tr("a", "d"), tr("c", "e")}), "d");
    CHECK(ceg.graph.nodes() == std::set<std::string>{"a", "b", "d"});
    CHECK(ceg.graph.edges() == std::set<Triplet>{tr("a", "b"), tr("b", "d")});
  }
  SUBCASE("cyclic ancestors") {
    CHECK(code_of([] { extract_ceg(graph_of({tr("a", "b"), tr("b", "a"), tr("b", "c")}), "c"); }) ==
          ErrorCode::CyclicGraph);
  }
  SUBCASE("cycle outside the ancestor set is ignored") {
    const auto ceg = extract_ceg(graph_of({tr("a", "b"), tr("x", "y"), tr("y", "x")}), "b");
    CHECK(ceg.graph.edges().size() == 1);
  }
}

TEST_CASE("extract_ceg output is a valid subgraph") {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 300; ++round) {
    const auto edges = T::random_dag(rng, 7, 0.4, 2);
    if (edges.empty()) continue;
    const auto g = graph_of(edges);
    for (const auto& target : g.nodes()) {
      const auto ceg = extract_ceg(g, target);
      for (const auto& n : ceg.graph.nodes()) CHECK(g.contains_node(n));
      for (const auto& e : ceg.graph.edges()) CHECK(g.contains_edge(e));
      CHECK_FALSE(check_ceg(ceg.graph, target).has_value());
    }
  }
}

TEST_CASE("check_ceg and make_ceg") {
  CHECK_FALSE(check_ceg(graph_of({tr("a", "b")}), "b").has_value());
  CHECK(check_ceg(graph_of({tr("a", "b")}), "a").has_value());
  CHECK(check_ceg(graph_of({tr("a", "b")}), "z").has_value());
  CHECK(check_ceg(graph_of({tr("a", "b"), tr("b", "c"), tr("a", "c")}), "c").has_value());
  CHECK(check_ceg(graph_of({tr("a", "b"), tr("b", "a")}), "a").has_value());
  CHECK(code_of([] { make_ceg(graph_of({tr("a", "b"), tr("c", "d")}), "b"); }) == ErrorCode::InvalidCeg);
}

TEST_CASE("connected_components") {
  CHECK(connected_components({}).empty());

  const auto one = connected_components({tr("a", "b", "p")});
  REQUIRE(one.size() == 1);
  CHECK(one[0].nodes == std::set<std::string>{"a", "b"});
  CHECK(one[0].triplets.size() == 1);

  const auto two = connected_components({tr("a", "b", "p"), tr("b", "c", "q"), tr("d", "e", "r")});
  REQUIRE(two.size() == 2);
  CHECK(two[0].nodes == std::set<std::string>{"a", "b", "c"});
  CHECK(two[0].triplets.size() == 2);
  CHECK(two[1].nodes == std::set<std::string>{"d", "e"});

  const auto tie = connected_components({tr("x", "y"), tr("b", "c")});
  REQUIRE(tie.size() == 2);
  CHECK(*tie[0].nodes.begin() == "b");
}

TEST_CASE("connected_components partitions and matches union-find oracle") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 500; ++round) {
    const auto ts = T::random_triplets(rng, 9, 10, 2);
    const auto comps = connected_components(ts);
    std::set<Triplet> seen;
    std::vector<std::size_t> sizes;
    for (const auto& c : comps) {
      for (const auto& t : c.triplets) {
        CHECK(seen.insert(t).second);
        CHECK(c.nodes.contains(t.subject));
        CHECK(c.nodes.contains(t.object));
      }
      sizes.push_back(c.triplets.size());
    }
    CHECK(seen == ts);
    CHECK(sizes == T::component_triplet_counts(ts));
  }
}

TEST_CASE("graph_jaccard") {
  const auto g = graph_of({tr("a", "b"), tr("b", "c")});
  CHECK(graph_jaccard(g, g) == 1.0);
  CHECK(graph_jaccard(g, graph_of({tr("x", "y")})) == 0.0);
  CHECK(graph_jaccard(graph_of({tr("a", "b"), tr("b", "c"), tr("c", "d")}),
                      graph_of({tr("a", "b"), tr("b", "c"), tr("d", "e")})) == 0.5);
  CHECK(graph_jaccard(EvidenceGraph{}, EvidenceGraph{}) == 1.0);
}

TEST_CASE("graph_jaccard properties") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 500; ++round) {
    const auto a = graph_of(T::random_triplets(rng, 4, 4, 1));
    const auto b = graph_of(T::random_triplets(rng, 4, 4, 1));
    const double j = graph_jaccard(a, b);
    CHECK(j == graph_jaccard(b, a));
    CHECK(j >= 0.0);
    CHECK(j <= 1.0);
    CHECK((j == 1.0) == (a.edges() == b.edges()));
  }
}
