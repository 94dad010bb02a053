// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ceg {

/// Fixed-length vector of finite floats. Use from_values to validate.
struct EmbeddingVector {
  std::vector<float> values;

  std::size_t dimension() const noexcept { return values.size(); }

  static EmbeddingVector from_values(std::vector<float> values);
};

/// dot(u, v) / (|u| |v|), clamped to [-1, 1].
double cosine_similarity(const EmbeddingVector& u, const EmbeddingVector& v);

/// Character-trigram feature hashing (FNV-1a, unsigned counts) of the text
/// framed by \x02 ... \x03, L2-normalized. Requires dimension >= 8.
EmbeddingVector hash_embed(std::string_view text, std::size_t dimension);

/// Text embedding provider. Implementations must be deterministic per text
/// and safe to call from several threads at once.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::string name() const = 0;
  /// 0 when the dimension is only known once the backend answers.
  virtual std::size_t dimension() const = 0;
  /// One vector per input text, in input order.
  virtual std::vector<EmbeddingVector> embed(std::span<const std::string> texts) const = 0;
};

class HashEmbedder final : public Embedder {
 public:
  explicit HashEmbedder(std::size_t dimension = 256);
  std::string name() const override { return "hash"; }
  std::size_t dimension() const override { return dimension_; }
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) const override;

 private:
  std::size_t dimension_;
};

struct HttpEmbedderOptions {
  std::string url = "http://127.0.0.1:8080/v1/embeddings";
  std::string model = "bge-large-en-v1.5";
  int timeout_ms = 10000;
  int retries = 2;
  /// Expected dimension; 0 accepts whatever the service returns.
  std::size_t dimension = 0;
  /// Texts per request.
  std::size_t batch_size = 64;
};

/// Client for the common embeddings API shape:
///   POST {"model": m, "input": [texts]} -> {"data": [{"embedding": [...]}, ...]}
/// Plain http:// only. Failures raise ProviderUnavailable.
class HttpEmbedder final : public Embedder {
 public:
  explicit HttpEmbedder(HttpEmbedderOptions options);
  std::string name() const override { return "http:" + options_.model; }
  std::size_t dimension() const override { return options_.dimension; }
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) const override;

 private:
  std::vector<EmbeddingVector> post_batch(std::span<const std::string> texts) const;

  HttpEmbedderOptions options_;
  std::string scheme_host_port_;
  std::string path_;
};

/// Read-through cache keyed by (provider name, dimension, text). Optionally
/// persisted as one file per key under `directory`; removing the directory
/// only costs latency.
class CachedEmbedder final : public Embedder {
 public:
  CachedEmbedder(std::shared_ptr<const Embedder> inner,
                 std::optional<std::filesystem::path> directory = std::nullopt);

  std::string name() const override { return inner_->name(); }
  std::size_t dimension() const override { return inner_->dimension(); }
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) const override;

  std::size_t memory_entries() const;

 private:
  std::string key_for(const std::string& text) const;
  std::optional<EmbeddingVector> load_from_disk(const std::string& key) const;
  void store_to_disk(const std::string& key, const EmbeddingVector& v) const;

  std::shared_ptr<const Embedder> inner_;
  std::optional<std::filesystem::path> directory_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::string, EmbeddingVector> memory_;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace ceg
