// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "ceg/embedding.hpp"
#include "ceg/error.hpp"

namespace ceg {

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

template <typename T>
void write_pod(std::ostream& os, const T& value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
bool read_pod(std::istream& is, T& value) {
  return static_cast<bool>(is.read(reinterpret_cast<char*>(&value), sizeof(T)));
}

}  // namespace

CachedEmbedder::CachedEmbedder(std::shared_ptr<const Embedder> inner,
                               std::optional<std::filesystem::path> directory)
    : inner_(std::move(inner)), directory_(std::move(directory)) {
  if (directory_) {
    std::error_code ec;
    std::filesystem::create_directories(*directory_, ec);
    if (ec) {
      throw Error(ErrorCode::IoError, "cannot create embedding cache directory",
                  {{"path", directory_->string()}, {"reason", ec.message()}});
    }
  }
}

std::string CachedEmbedder::key_for(const std::string& text) const {
  std::string key = inner_->name();
  key.push_back('\x1f');
  key += std::to_string(inner_->dimension());
  key.push_back('\x1f');
  key += text;
  return key;
}

std::size_t CachedEmbedder::memory_entries() const {
  std::shared_lock lock(mutex_);
  return memory_.size();
}

// Layout: u32 key length, key bytes, u32 dimension, float values.
std::optional<EmbeddingVector> CachedEmbedder::load_from_disk(const std::string& key) const {
  const auto path = *directory_ / (hex64(fnv1a64(key)) + ".emb");
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::uint32_t key_len = 0;
  if (!read_pod(in, key_len) || key_len != key.size()) return std::nullopt;
  std::string stored(key_len, '\0');
  if (!in.read(stored.data(), key_len) || stored != key) return std::nullopt;
  std::uint32_t dim = 0;
  if (!read_pod(in, dim) || dim == 0) return std::nullopt;
  std::vector<float> values(dim);
  if (!in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(dim * sizeof(float)))) {
    return std::nullopt;
  }
  return EmbeddingVector{std::move(values)};
}

void CachedEmbedder::store_to_disk(const std::string& key, const EmbeddingVector& v) const {
  static std::atomic<std::uint64_t> counter{0};
  const auto final_path = *directory_ / (hex64(fnv1a64(key)) + ".emb");
  std::ostringstream tmp_name;
  tmp_name << final_path.filename().string() << ".tmp." << std::this_thread::get_id() << "." << counter++;
  const auto tmp_path = *directory_ / tmp_name.str();
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) return;
    write_pod(out, static_cast<std::uint32_t>(key.size()));
    out.write(key.data(), static_cast<std::streamsize>(key.size()));
    write_pod(out, static_cast<std::uint32_t>(v.dimension()));
    out.write(reinterpret_cast<const char*>(v.values.data()),
              static_cast<std::streamsize>(v.values.size() * sizeof(float)));
    if (!out) return;
  }
  std::error_code ec;
  std::filesystem::rename(tmp_path, final_path, ec);
  if (ec) std::filesystem::remove(tmp_path, ec);
}

std::vector<EmbeddingVector> CachedEmbedder::embed(std::span<const std::string> texts) const {
  std::vector<std::optional<EmbeddingVector>> found(texts.size());
  std::vector<std::string> keys(texts.size());
  {
    std::shared_lock lock(mutex_);
    for (std::size_t i = 0; i < texts.size(); ++i) {
      keys[i] = key_for(texts[i]);
      if (auto it = memory_.find(keys[i]); it != memory_.end()) found[i] = it->second;
    }
  }

  std::vector<std::size_t> misses;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (found[i]) continue;
    if (directory_) found[i] = load_from_disk(keys[i]);
    if (!found[i]) misses.push_back(i);
  }

  if (!misses.empty()) {
    std::vector<std::string> pending;
    pending.reserve(misses.size());
    for (std::size_t i : misses) pending.push_back(texts[i]);
    auto fresh = inner_->embed(pending);
    for (std::size_t k = 0; k < misses.size(); ++k) {
      if (directory_) store_to_disk(keys[misses[k]], fresh[k]);
      found[misses[k]] = std::move(fresh[k]);
    }
  }

  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  {
    std::unique_lock lock(mutex_);
    for (std::size_t i = 0; i < texts.size(); ++i) {
      memory_.insert_or_assign(keys[i], *found[i]);
      out.push_back(std::move(*found[i]));
    }
  }
  return out;
}

}  // namespace ceg
