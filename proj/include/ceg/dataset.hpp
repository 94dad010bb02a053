// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ceg/graph.hpp"

namespace ceg {

/// (question, rationale, answer, evidence graph, optional CEG).
struct DatasetRecord {
  std::string question;
  std::string rationale;
  std::string answer;
  std::vector<Triplet> triplets;
  std::optional<std::vector<Triplet>> ceg_triplets;
  std::optional<NodeId> ceg_conclusion;

  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

/// Missing fields raise ParseError with detail["field"]; a CEG that violates
/// its invariants raises InvalidCeg.
DatasetRecord load_dataset_record(std::string_view text);
std::string save_dataset_record(const DatasetRecord& record);

struct AttemptLog {
  std::string question_id;
  std::vector<bool> attempts;
};

/// Keep iff fewer than half of the attempts were correct (strict, real-valued
/// half). Throws InvalidArgument for an empty log.
bool hard_case_filter(const AttemptLog& log);

}  // namespace ceg
