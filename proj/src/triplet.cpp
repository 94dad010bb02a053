// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include "ceg/triplet.hpp"

#include "ceg/error.hpp"

namespace ceg {

namespace {

constexpr bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

constexpr char fold(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace

std::string normalize_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(fold(c));
  }
  return out;
}

std::string normalize_concept(std::string_view text) {
  std::string out = normalize_text(text);
  if (out.empty()) {
    throw Error(ErrorCode::EmptyConcept, "concept is empty after normalization",
                {{"raw", std::string(text)}});
  }
  return out;
}

Triplet make_triplet(std::string_view subject, std::string_view predicate, std::string_view object) {
  return Triplet{normalize_concept(subject), normalize_concept(predicate), normalize_concept(object)};
}

}  // namespace ceg
