// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace ceg {

using NodeId = std::string;

/// Trim, collapse internal ASCII whitespace runs to one space, ASCII case-fold.
/// Never throws; may return an empty string.
std::string normalize_text(std::string_view text);

/// normalize_text, but an empty result raises Error(EmptyConcept).
std::string normalize_concept(std::string_view text);

/// One (subject, predicate, object) reasoning fact. Components are stored
/// normalized; construct through make_triplet to enforce that.
struct Triplet {
  std::string subject;
  std::string predicate;
  std::string object;

  friend auto operator<=>(const Triplet&, const Triplet&) = default;
  friend bool operator==(const Triplet&, const Triplet&) = default;
};

Triplet make_triplet(std::string_view subject, std::string_view predicate, std::string_view object);

}  // namespace ceg
