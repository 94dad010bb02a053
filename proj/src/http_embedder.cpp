// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <thread>

#include "ceg/embedding.hpp"
#include "ceg/error.hpp"
#include "httplib.h"
#include "json.hpp"

namespace ceg {

using nlohmann::json;

namespace {

Error unavailable(const std::string& message, json detail) {
  detail["retry"] = "check EMBED_URL / EMBED_MODEL, or rerun with --provider hash for the offline fallback";
  return Error(ErrorCode::ProviderUnavailable, message, std::move(detail));
}

}  // namespace

HttpEmbedder::HttpEmbedder(HttpEmbedderOptions options) : options_(std::move(options)) {
  const std::string& url = options_.url;
  const std::string prefix = "http://";
  if (url.rfind(prefix, 0) != 0) {
    throw Error(ErrorCode::InvalidArgument, "embedding URL must start with http://", {{"url", url}});
  }
  const auto slash = url.find('/', prefix.size());
  scheme_host_port_ = url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : url.substr(slash);
  if (scheme_host_port_.size() == prefix.size()) {
    throw Error(ErrorCode::InvalidArgument, "embedding URL has no host", {{"url", url}});
  }
  if (options_.batch_size == 0) options_.batch_size = 1;
}

std::vector<EmbeddingVector> HttpEmbedder::post_batch(std::span<const std::string> texts) const {
  const std::string body = json{{"model", options_.model}, {"input", texts}}.dump();
  std::string last_error;
  for (int attempt = 0; attempt <= options_.retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(100 * attempt));

    httplib::Client client(scheme_host_port_);
    const auto timeout = std::chrono::milliseconds(options_.timeout_ms);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);

    auto res = client.Post(path_, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw unavailable("embedding service rejected the request",
                        {{"url", options_.url}, {"status", res->status}, {"body", res->body}});
    }

    json doc = json::parse(res->body, nullptr, false);
    if (doc.is_discarded() || !doc.contains("data") || !doc["data"].is_array() ||
        doc["data"].size() != texts.size()) {
      throw unavailable("malformed embedding response", {{"url", options_.url}});
    }
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& item : doc["data"]) {
      if (!item.is_object() || !item.contains("embedding") || !item["embedding"].is_array()) {
        throw unavailable("malformed embedding response item", {{"url", options_.url}});
      }
      std::vector<float> values;
      values.reserve(item["embedding"].size());
      for (const auto& x : item["embedding"]) {
        if (!x.is_number()) throw unavailable("non-numeric embedding entry", {{"url", options_.url}});
        values.push_back(x.get<float>());
      }
      auto v = EmbeddingVector::from_values(std::move(values));
      if (options_.dimension != 0 && v.dimension() != options_.dimension) {
        throw Error(ErrorCode::DimensionMismatch, "embedding service returned an unexpected dimension",
                    {{"expected", options_.dimension}, {"actual", v.dimension()}});
      }
      out.push_back(std::move(v));
    }
    return out;
  }
  throw unavailable("embedding service unreachable",
                    {{"url", options_.url}, {"attempts", options_.retries + 1}, {"last_error", last_error}});
}

std::vector<EmbeddingVector> HttpEmbedder::embed(std::span<const std::string> texts) const {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (std::size_t start = 0; start < texts.size(); start += options_.batch_size) {
    const std::size_t n = std::min(options_.batch_size, texts.size() - start);
    auto part = post_batch(texts.subspan(start, n));
    for (auto& v : part) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace ceg
