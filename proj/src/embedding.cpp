// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include "ceg/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "ceg/error.hpp"
#include "ceg/simd.hpp"

namespace ceg {

EmbeddingVector EmbeddingVector::from_values(std::vector<float> values) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "embedding has dimension 0");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::InvalidArgument, "embedding has a non-finite entry", {{"index", i}});
    }
  }
  return EmbeddingVector{std::move(values)};
}

double cosine_similarity(const EmbeddingVector& u, const EmbeddingVector& v) {
  if (u.dimension() != v.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "cosine similarity of vectors with different dimensions",
                {{"left", u.dimension()}, {"right", v.dimension()}});
  }
  const simd::DotNorms parts = simd::dot_norms(u.values, v.values);
  if (parts.norm_a == 0.0 || parts.norm_b == 0.0) {
    throw Error(ErrorCode::ZeroVector, "cosine similarity with a zero vector");
  }
  const double c = parts.dot / (std::sqrt(parts.norm_a) * std::sqrt(parts.norm_b));
  return std::clamp(c, -1.0, 1.0);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

EmbeddingVector hash_embed(std::string_view text, std::size_t dimension) {
  if (dimension < 8) {
    throw Error(ErrorCode::InvalidArgument, "hash embedding dimension must be at least 8",
                {{"dimension", dimension}});
  }
  if (text.empty()) throw Error(ErrorCode::ZeroVector, "cannot embed empty text");

  std::string framed;
  framed.reserve(text.size() + 2);
  framed.push_back('\x02');
  framed.append(text);
  framed.push_back('\x03');

  std::vector<float> values(dimension, 0.0f);
  for (std::size_t i = 0; i + 3 <= framed.size(); ++i) {
    values[fnv1a64(std::string_view(framed).substr(i, 3)) % dimension] += 1.0f;
  }
  // Counts are small integers, so the squared norm is exact in any order.
  const double norm = std::sqrt(simd::squared_norm(values));
  simd::scale(values, static_cast<float>(1.0 / norm));
  return EmbeddingVector{std::move(values)};
}

HashEmbedder::HashEmbedder(std::size_t dimension) : dimension_(dimension) {
  if (dimension < 8) {
    throw Error(ErrorCode::InvalidArgument, "hash embedding dimension must be at least 8",
                {{"dimension", dimension}});
  }
}

std::vector<EmbeddingVector> HashEmbedder::embed(std::span<const std::string> texts) const {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(hash_embed(t, dimension_));
  return out;
}

}  // namespace ceg
