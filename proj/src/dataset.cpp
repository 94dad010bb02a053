// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include "ceg/dataset.hpp"

#include <algorithm>

#include "ceg/error.hpp"
#include "ceg/wire.hpp"

namespace ceg {

using nlohmann::json;

DatasetRecord load_dataset_record(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw_parse("wrong_type", "document root must be an object", "", text);
  if (doc.contains("format_version") &&
      (!doc["format_version"].is_number_integer() || doc["format_version"].get<long long>() != kFormatVersion)) {
    throw_parse("unsupported_version", "unsupported format_version", "/format_version", text);
  }

  DatasetRecord r;
  r.question = require_string(doc, "question", "", text);
  r.rationale = require_string(doc, "rationale", "", text);
  r.answer = require_string(doc, "answer", "", text);
  if (normalize_text(r.question).empty()) throw_parse("empty_value", "question is empty", "/question", text);
  if (normalize_text(r.answer).empty()) throw_parse("empty_value", "answer is empty", "/answer", text);
  if (!doc.contains("triplets")) {
    throw_parse("missing_field", "missing required field 'triplets'", "", text, {{"field", "triplets"}});
  }
  r.triplets = triplets_from_json(doc, "/triplets", text);

  const bool has_ceg = doc.contains("ceg_triplets") && !doc["ceg_triplets"].is_null();
  const bool has_conclusion = doc.contains("ceg_conclusion") && !doc["ceg_conclusion"].is_null();
  if (has_ceg != has_conclusion) {
    const char* missing = has_ceg ? "ceg_conclusion" : "ceg_triplets";
    throw_parse("missing_field", std::string("missing required field '") + missing + "'", "", text,
                {{"field", missing}});
  }
  if (has_ceg) {
    r.ceg_triplets = triplets_from_json(doc, "/ceg_triplets", text);
    const std::string conclusion = normalize_text(require_string(doc, "ceg_conclusion", "", text));
    if (conclusion.empty()) throw_parse("empty_concept", "ceg_conclusion is empty", "/ceg_conclusion", text);
    r.ceg_conclusion = conclusion;
    EvidenceGraph g = build_graph(*r.ceg_triplets);
    g.add_node(conclusion);
    make_ceg(std::move(g), conclusion);
  }
  return r;
}

std::string save_dataset_record(const DatasetRecord& r) {
  json doc{{"format_version", kFormatVersion},
           {"question", r.question},
           {"rationale", r.rationale},
           {"answer", r.answer},
           {"triplets", triplets_to_json(std::span<const Triplet>(r.triplets))}};
  if (r.ceg_triplets) doc["ceg_triplets"] = triplets_to_json(std::span<const Triplet>(*r.ceg_triplets));
  if (r.ceg_conclusion) doc["ceg_conclusion"] = *r.ceg_conclusion;
  return dump(doc);
}

bool hard_case_filter(const AttemptLog& log) {
  if (log.attempts.empty()) throw Error(ErrorCode::InvalidArgument, "attempt log is empty");
  const auto correct = std::count(log.attempts.begin(), log.attempts.end(), true);
  return static_cast<double>(correct) < static_cast<double>(log.attempts.size()) / 2.0;
}

}  // namespace ceg
