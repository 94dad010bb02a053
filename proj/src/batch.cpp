// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <atomic>
#include <thread>

#include "ceg/engine.hpp"
#include "ceg/error.hpp"

namespace ceg {

namespace {

std::string score_line(const Engine& engine, const std::string& line) {
  try {
    return engine.score_json(parse_json(line), line);
  } catch (const Error& e) {
    return dump(nlohmann::json{{"error", e.to_json()}});
  } catch (const std::exception& e) {
    return dump(nlohmann::json{{"error", Error(ErrorCode::Internal, e.what()).to_json()}});
  }
}

}  // namespace

std::vector<std::string> score_batch(const Engine& engine, std::span<const std::string> lines, std::size_t workers) {
  std::vector<std::string> out(lines.size());
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, lines.size()));
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < lines.size(); i = next++) out[i] = score_line(engine, lines[i]);
  };
  if (workers == 1) {
    run();
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace ceg
