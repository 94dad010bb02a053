// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include "ceg/service.hpp"

#include "ceg/error.hpp"
#include "ceg/simd.hpp"
#include "httplib.h"

namespace ceg {

using nlohmann::json;

int http_status(ErrorCode code) {
  switch (classify(code)) {
    case ErrorClass::Input: return 400;
    case ErrorClass::Precondition:
    case ErrorClass::Cycle: return 422;
    case ErrorClass::Provider: return 502;
    case ErrorClass::Internal: return 500;
  }
  return 500;
}

Service::Service(std::shared_ptr<const Engine> engine) : engine_(std::move(engine)) {}

namespace {

HttpReply error_reply(const Error& e) { return {http_status(e.code()), dump(e.to_json())}; }

HttpReply ok(const json& body) { return {200, dump(body)}; }

}  // namespace

HttpReply Service::handle(std::string_view method, std::string_view path, std::string_view body) const {
  try {
    if (path == "/health") {
      if (method != "GET") return {405, dump(Error(ErrorCode::InvalidArgument, "use GET", {{"path", path}}).to_json())};
      return ok({{"status", "ok"},
                 {"provider", engine_->model().name()},
                 {"version", std::string(kVersion)},
                 {"simd", std::string(simd::to_string(simd::active_level()))}});
    }
    const bool known = path == "/v1/ceg/extract" || path == "/v1/score" || path == "/v1/grpo/advantages" ||
                       path == "/v1/grpo/objective";
    if (!known) return {404, dump(Error(ErrorCode::InvalidArgument, "no such endpoint", {{"path", path}}).to_json())};
    if (method != "POST") return {405, dump(Error(ErrorCode::InvalidArgument, "use POST", {{"path", path}}).to_json())};

    const json doc = parse_json(body);
    if (path == "/v1/score") return {200, engine_->score_json(doc, body)};
    if (path == "/v1/grpo/advantages") return ok(engine_->advantages(doc));
    if (path == "/v1/grpo/objective") return ok(engine_->objective(doc));

    if (!doc.is_object()) throw_parse("wrong_type", "request must be an object", "", body);
    if (!doc.contains("triplets")) {
      throw_parse("missing_field", "missing required field 'triplets'", "", body, {{"field", "triplets"}});
    }
    const auto triplets = triplets_from_json(doc, "/triplets", body);
    const std::string answer = require_string(doc, "answer", "", body);
    return ok(engine_->extract_document(triplets, answer));
  } catch (const Error& e) {
    return error_reply(e);
  } catch (const json::exception& e) {
    return error_reply(Error(ErrorCode::ParseError, e.what()));
  } catch (const std::exception& e) {
    return error_reply(Error(ErrorCode::Internal, e.what()));
  }
}

struct Server::Impl {
  Service service;
  httplib::Server server;

  explicit Impl(std::shared_ptr<const Engine> engine) : service(std::move(engine)) {
    auto route = [this](const httplib::Request& req, httplib::Response& res) {
      const HttpReply reply = service.handle(req.method, req.path, req.body);
      res.status = reply.status;
      res.set_content(reply.body, "application/json");
    };
    server.Get(R"(/.*)", route);
    server.Post(R"(/.*)", route);
  }
};

Server::Server(std::shared_ptr<const Engine> engine) : impl_(std::make_unique<Impl>(std::move(engine))) {}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool Server::listen() { return impl_->server.listen_after_bind(); }

void Server::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace ceg
