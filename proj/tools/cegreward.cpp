// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

// cegreward: batch and serving front end for the evidence-graph reward engine.
//
// Exit codes: 0 ok, 1 unreadable/malformed input, 2 failed precondition
// (empty graph, empty reference, ...), 3 cyclic graph, 4 embedding provider
// unavailable, 5 internal error. Failures print {"error": {...}} on stderr.

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ceg/config.hpp"
#include "ceg/engine.hpp"
#include "ceg/error.hpp"
#include "ceg/service.hpp"
#include "ceg/wire.hpp"

namespace {

using ceg::Error;
using ceg::ErrorCode;
using nlohmann::json;

struct GlobalOptions {
  std::string config_path;
  std::string provider;
  std::optional<double> theta_entity;
  std::optional<double> theta_relation;
};

ceg::EngineConfig resolve_config(const GlobalOptions& g) {
  ceg::EngineConfig cfg;
  if (!g.config_path.empty()) cfg = ceg::load_config_file(g.config_path);
  ceg::apply_environment(cfg);
  if (!g.provider.empty()) cfg.provider.kind = ceg::parse_provider_kind(g.provider);
  if (g.theta_entity) cfg.thresholds.entity = *g.theta_entity;
  if (g.theta_relation) cfg.thresholds.relation = *g.theta_relation;
  ceg::validate(cfg);
  return cfg;
}

int exit_code(ErrorCode code) {
  switch (ceg::classify(code)) {
    case ceg::ErrorClass::Input: return 1;
    case ceg::ErrorClass::Precondition: return 2;
    case ceg::ErrorClass::Cycle: return 3;
    case ceg::ErrorClass::Provider: return 4;
    case ceg::ErrorClass::Internal: return 5;
  }
  return 5;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty() || output_path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(output_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write output file", {{"path", output_path}});
  out << text << '\n';
}

std::vector<std::string> read_lines(const std::string& path) {
  std::istringstream in(ceg::read_file(path));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) lines.push_back(line);
  }
  return lines;
}

ceg::Server* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evidence-graph reward engine: CEG extraction, CRP scoring, GRPO math, reward serving"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--config", global.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--provider", global.provider, "Similarity provider")
      ->check(CLI::IsMember({"http", "hash", "discrete"}));
  app.add_option("--theta-entity", global.theta_entity, "Entity match threshold in [0,1]");
  app.add_option("--theta-relation", global.theta_relation, "Relation match threshold in [0,1]");

  std::string input, output, answer, reference, generated, response_path, gold, other, bind = "127.0.0.1:8000";
  std::size_t workers = 1;

  auto* extract = app.add_subcommand("extract-ceg", "Extract the critical evidence graph of a triplet document");
  extract->add_option("--input,-i", input, "Triplet document")->required();
  extract->add_option("--answer,-a", answer, "Ground-truth answer used to pick the conclusion")->required();
  extract->add_option("--output,-o", output, "Output path (default stdout)");

  auto* score = app.add_subcommand("score", "Score generated triplets against a reference CEG");
  score->add_option("--reference,-r", reference, "Reference CEG document")->required();
  score->add_option("--generated,-g", generated, "Generated triplet document")->required();
  score->add_option("--response", response_path, "File holding the model response text");
  score->add_option("--gold", gold, "Gold answer");
  score->add_option("--output,-o", output, "Output path (default stdout)");

  auto* batch = app.add_subcommand("score-batch", "Score a JSONL file of score requests");
  batch->add_option("--input,-i", input, "JSONL score requests")->required();
  batch->add_option("--output,-o", output, "JSONL breakdowns (default stdout)");
  batch->add_option("--workers,-w", workers, "Worker threads")->check(CLI::PositiveNumber);

  auto* reduce = app.add_subcommand("reduce", "Transitive reduction of a triplet document");
  reduce->add_option("--input,-i", input, "Triplet document")->required();
  reduce->add_option("--output,-o", output, "Output path (default stdout)");

  auto* jaccard = app.add_subcommand("jaccard", "Edge-set Jaccard similarity of two triplet documents");
  jaccard->add_option("first", input, "Triplet document")->required();
  jaccard->add_option("second", other, "Triplet document")->required();

  auto* advantage = app.add_subcommand("grpo-advantage", "Group-relative advantages of {\"rewards\": [...]}");
  advantage->add_option("--input,-i", input, "Input document")->required();
  advantage->add_option("--output,-o", output, "Output path (default stdout)");

  auto* objective = app.add_subcommand("grpo-objective", "Clipped GRPO objective of a token log-prob group");
  objective->add_option("--input,-i", input, "Input document")->required();
  objective->add_option("--output,-o", output, "Output path (default stdout)");

  auto* serve = app.add_subcommand("serve", "Run the HTTP reward service");
  serve->add_option("--bind", bind, "host:port");

  CLI11_PARSE(app, argc, argv);

  try {
    const ceg::EngineConfig cfg = resolve_config(global);

    if (*reduce) {
      const auto triplets = ceg::parse_triplet_document(ceg::read_file(input));
      const auto reduced = ceg::transitive_reduction(ceg::build_graph(triplets));
      const std::vector<ceg::Triplet> edges(reduced.edges().begin(), reduced.edges().end());
      emit(ceg::dump_triplet_document(edges), output);
      return 0;
    }
    if (*jaccard) {
      const auto a = ceg::build_graph(ceg::parse_triplet_document(ceg::read_file(input)));
      const auto b = ceg::build_graph(ceg::parse_triplet_document(ceg::read_file(other)));
      emit(ceg::dump(json{{"jaccard", ceg::graph_jaccard(a, b)}}), "");
      return 0;
    }

    const auto engine = std::make_shared<const ceg::Engine>(cfg);

    if (*extract) {
      const auto triplets = ceg::parse_triplet_document(ceg::read_file(input));
      emit(ceg::dump(engine->extract_document(triplets, answer)), output);
    } else if (*score) {
      ceg::ScoreRequest req{ceg::parse_ceg_document(ceg::read_file(reference)),
                            ceg::build_graph(ceg::parse_triplet_document(ceg::read_file(generated))),
                            std::nullopt, std::nullopt};
      if (!response_path.empty()) req.response = ceg::read_file(response_path);
      if (!gold.empty()) req.gold = gold;
      emit(ceg::dump(ceg::breakdown_to_json(engine->score(req))), output);
    } else if (*batch) {
      const auto lines = read_lines(input);
      const auto results = ceg::score_batch(*engine, lines, workers);
      std::string joined;
      for (std::size_t i = 0; i < results.size(); ++i) {
        if (i) joined.push_back('\n');
        joined += results[i];
      }
      emit(joined, output);
    } else if (*advantage) {
      emit(ceg::dump(engine->advantages(ceg::parse_json(ceg::read_file(input)))), output);
    } else if (*objective) {
      emit(ceg::dump(engine->objective(ceg::parse_json(ceg::read_file(input)))), output);
    } else if (*serve) {
      const auto colon = bind.rfind(':');
      if (colon == std::string::npos) throw Error(ErrorCode::InvalidArgument, "--bind must be host:port");
      const std::string host = bind.substr(0, colon);
      const int port = std::stoi(bind.substr(colon + 1));
      ceg::Server server(engine);
      const int bound = server.bind(host, port);
      if (bound < 0) throw Error(ErrorCode::IoError, "cannot bind", {{"bind", bind}});
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "listening on " << host << ":" << bound << std::endl;
      server.listen();
      g_server = nullptr;
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << ceg::dump(json{{"error", e.to_json()}}) << std::endl;
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << ceg::dump(json{{"error", Error(ErrorCode::Internal, e.what()).to_json()}}) << std::endl;
    return 5;
  }
}
