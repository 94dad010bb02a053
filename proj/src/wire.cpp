// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include "ceg/wire.hpp"

#include "ceg/error.hpp"
#include "json_locate.hpp"

namespace ceg {

using nlohmann::json;

void throw_parse(std::string_view kind, std::string message, std::string_view pointer, std::string_view text,
                 json extra) {
  json detail = std::move(extra);
  detail["kind"] = std::string(kind);
  detail["pointer"] = std::string(pointer);
  if (!text.empty()) {
    if (auto offset = detail::locate_json_pointer(text, pointer)) detail["offset"] = *offset;
  }
  throw Error(ErrorCode::ParseError, std::move(message), std::move(detail));
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what(),
                {{"kind", "syntax"}, {"pointer", ""}, {"offset", e.byte > 0 ? e.byte - 1 : 0}});
  }
}

std::string dump(const json& doc) { return doc.dump(-1, ' ', false, json::error_handler_t::replace); }

std::string require_string(const json& obj, std::string_view field, std::string_view pointer,
                           std::string_view text) {
  const std::string key(field);
  if (!obj.contains(key)) {
    throw_parse("missing_field", "missing required field '" + key + "'", pointer, text, {{"field", key}});
  }
  const json& v = obj.at(key);
  const std::string child = std::string(pointer) + "/" + key;
  if (!v.is_string()) {
    throw_parse("wrong_type", "field '" + key + "' must be a string", child, text, {{"field", key}});
  }
  return v.get<std::string>();
}

namespace {

void check_version(const json& doc, std::string_view text) {
  if (!doc.contains("format_version")) return;
  const json& v = doc["format_version"];
  if (!v.is_number_integer() || v.get<long long>() != kFormatVersion) {
    throw_parse("unsupported_version", "unsupported format_version", "/format_version", text);
  }
}

void require_object(const json& doc, std::string_view text) {
  if (!doc.is_object()) throw_parse("wrong_type", "document root must be an object", "", text);
}

}  // namespace

std::vector<Triplet> triplets_from_json(const json& doc, std::string_view pointer, std::string_view text) {
  const json& arr = doc.at(json::json_pointer(std::string(pointer)));
  if (!arr.is_array()) throw_parse("wrong_type", "triplets must be an array", pointer, text);

  std::vector<Triplet> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& item = arr[i];
    const std::string at = std::string(pointer) + "/" + std::to_string(i);
    if (!item.is_array()) throw_parse("wrong_type", "triplet must be an array of 3 strings", at, text);
    if (item.size() != 3) {
      throw_parse("arity", "triplet must have exactly 3 members", at, text, {{"arity", item.size()}});
    }
    for (std::size_t k = 0; k < 3; ++k) {
      if (!item[k].is_string()) {
        throw_parse("wrong_type", "triplet members must be strings", at + "/" + std::to_string(k), text);
      }
    }
    try {
      out.push_back(make_triplet(item[0].get<std::string>(), item[1].get<std::string>(),
                                 item[2].get<std::string>()));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyConcept) throw;
      throw_parse("empty_concept", "triplet member is empty after normalization", at, text);
    }
  }
  return out;
}

std::vector<Triplet> parse_triplet_document(std::string_view text) {
  const json doc = parse_json(text);
  require_object(doc, text);
  check_version(doc, text);
  if (!doc.contains("triplets")) {
    throw_parse("missing_field", "missing required field 'triplets'", "", text, {{"field", "triplets"}});
  }
  return triplets_from_json(doc, "/triplets", text);
}

json triplets_to_json(std::span<const Triplet> triplets) {
  json arr = json::array();
  for (const auto& t : triplets) arr.push_back({t.subject, t.predicate, t.object});
  return arr;
}

json triplets_to_json(const std::set<Triplet>& triplets) {
  json arr = json::array();
  for (const auto& t : triplets) arr.push_back({t.subject, t.predicate, t.object});
  return arr;
}

std::string dump_triplet_document(std::span<const Triplet> triplets) {
  return dump(json{{"triplets", triplets_to_json(triplets)}});
}

json ceg_to_json(const CriticalEvidenceGraph& ceg, const std::optional<CegStats>& stats) {
  json doc{{"format_version", kFormatVersion},
           {"triplets", triplets_to_json(ceg.graph.edges())},
           {"conclusion", ceg.conclusion}};
  if (stats) {
    doc["stats"] = {{"nodes_in", stats->nodes_in},
                    {"nodes_out", stats->nodes_out},
                    {"edges_pruned", stats->edges_pruned}};
  }
  return doc;
}

CriticalEvidenceGraph ceg_from_json(const json& doc, std::string_view text) {
  require_object(doc, text);
  check_version(doc, text);
  if (!doc.contains("triplets")) {
    throw_parse("missing_field", "missing required field 'triplets'", "", text, {{"field", "triplets"}});
  }
  const auto triplets = triplets_from_json(doc, "/triplets", text);
  const std::string raw = require_string(doc, "conclusion", "", text);
  const std::string conclusion = normalize_text(raw);
  if (conclusion.empty()) throw_parse("empty_concept", "conclusion is empty", "/conclusion", text);
  EvidenceGraph g = build_graph(triplets);
  g.add_node(conclusion);
  return make_ceg(std::move(g), conclusion);
}

CriticalEvidenceGraph parse_ceg_document(std::string_view text) { return ceg_from_json(parse_json(text), text); }

json breakdown_to_json(const RewardBreakdown& b) {
  return {{"format_version", kFormatVersion},
          {"r_node", b.r_node},
          {"r_struct", b.r_struct},
          {"r_chain", b.r_chain},
          {"r_reason", b.r_reason},
          {"r_answer", b.r_answer},
          {"r_format", b.r_format},
          {"r_crp", b.r_crp},
          {"answer_missing", b.answer_missing},
          {"recalled_triplets", triplets_to_json(b.recalled_triplets)},
          {"largest_component_size", b.largest_component_size}};
}

RewardBreakdown breakdown_from_json(const json& doc) {
  require_object(doc, {});
  check_version(doc, {});
  auto number = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_number()) {
      throw_parse("missing_field", std::string("missing numeric field '") + key + "'", "", {}, {{"field", key}});
    }
    return doc[key].get<double>();
  };
  RewardBreakdown b;
  b.r_node = number("r_node");
  b.r_struct = number("r_struct");
  b.r_chain = number("r_chain");
  b.r_reason = number("r_reason");
  b.r_answer = static_cast<int>(number("r_answer"));
  b.r_format = static_cast<int>(number("r_format"));
  b.r_crp = number("r_crp");
  b.largest_component_size = static_cast<std::size_t>(number("largest_component_size"));
  if (!doc.contains("answer_missing") || !doc["answer_missing"].is_boolean()) {
    throw_parse("missing_field", "missing boolean field 'answer_missing'", "", {}, {{"field", "answer_missing"}});
  }
  b.answer_missing = doc["answer_missing"].get<bool>();
  if (!doc.contains("recalled_triplets")) {
    throw_parse("missing_field", "missing field 'recalled_triplets'", "", {}, {{"field", "recalled_triplets"}});
  }
  const auto recalled = triplets_from_json(doc, "/recalled_triplets");
  b.recalled_triplets.insert(recalled.begin(), recalled.end());
  return b;
}

}  // namespace ceg
