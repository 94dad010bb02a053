// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Reward serving endpoints:
//   GET  /health               -> {status, provider, version, simd}
//   POST /v1/ceg/extract       {triplets, answer} -> CEG document
//   POST /v1/score             score request -> breakdown
//   POST /v1/grpo/advantages   {rewards} -> {advantages}
//   POST /v1/grpo/objective    group -> {objective, advantages, token_terms}
// Errors come back as {code, message, detail} with 400 (parse), 422
// (precondition), 502 (provider) or 500 (internal).

#include <memory>
#include <string>
#include <string_view>

#include "ceg/engine.hpp"
#include "ceg/error.hpp"

namespace ceg {

struct HttpReply {
  int status = 200;
  std::string body;
};

int http_status(ErrorCode code);

/// Routing and request handling without any socket. Stateless per request.
class Service {
 public:
  explicit Service(std::shared_ptr<const Engine> engine);

  HttpReply handle(std::string_view method, std::string_view path, std::string_view body) const;

 private:
  std::shared_ptr<const Engine> engine_;
};

/// httplib-backed listener around a Service.
class Server {
 public:
  explicit Server(std::shared_ptr<const Engine> engine);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ceg
