// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// JSON documents exchanged with extractors, trainers and the CLI.
//
//   triplet document   {"triplets": [[s, p, o], ...]}
//   CEG document       {"format_version": 1, "triplets": [...], "conclusion": id,
//                       "stats": {"nodes_in", "nodes_out", "edges_pruned"}}
//   breakdown          {"format_version": 1, "r_node", ..., "r_crp", ...}
//   dataset record     {"format_version": 1, "question", "rationale", "answer",
//                       "triplets", "ceg_triplets"?, "ceg_conclusion"?}
//
// Parse failures raise Error(ParseError) whose detail carries "kind", the
// JSON "pointer" of the offending value and its byte "offset".

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ceg/graph.hpp"
#include "ceg/reward.hpp"
#include "json.hpp"

namespace ceg {

inline constexpr int kFormatVersion = 1;

/// Parses text as JSON, raising ParseError(kind "syntax") with the byte offset.
nlohmann::json parse_json(std::string_view text);

std::vector<Triplet> parse_triplet_document(std::string_view text);

/// Decodes the array at `pointer` inside `doc`. `text` is only used to turn
/// pointers into byte offsets for error reports.
std::vector<Triplet> triplets_from_json(const nlohmann::json& doc, std::string_view pointer,
                                        std::string_view text = {});

nlohmann::json triplets_to_json(std::span<const Triplet> triplets);
nlohmann::json triplets_to_json(const std::set<Triplet>& triplets);
std::string dump_triplet_document(std::span<const Triplet> triplets);

struct CegStats {
  std::size_t nodes_in = 0;
  std::size_t nodes_out = 0;
  std::size_t edges_pruned = 0;
};

nlohmann::json ceg_to_json(const CriticalEvidenceGraph& ceg, const std::optional<CegStats>& stats = std::nullopt);

/// Reads {"triplets", "conclusion"} and validates the CEG invariants
/// (InvalidCeg on violation).
CriticalEvidenceGraph ceg_from_json(const nlohmann::json& doc, std::string_view text = {});
CriticalEvidenceGraph parse_ceg_document(std::string_view text);

nlohmann::json breakdown_to_json(const RewardBreakdown& breakdown);
RewardBreakdown breakdown_from_json(const nlohmann::json& doc);

/// Compact, key-sorted serialization used for every emitted document.
std::string dump(const nlohmann::json& doc);

/// Shared helpers for documents with fixed field names.
std::string require_string(const nlohmann::json& obj, std::string_view field, std::string_view pointer,
                           std::string_view text);
[[noreturn]] void throw_parse(std::string_view kind, std::string message, std::string_view pointer,
                              std::string_view text, nlohmann::json extra = nlohmann::json::object());

}  // namespace ceg
