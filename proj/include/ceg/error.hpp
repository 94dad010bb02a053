// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace ceg {

enum class ErrorCode {
  EmptyConcept,
  InvalidQuorum,
  UnknownNode,
  CyclicGraph,
  EmptyGraph,
  InvalidCeg,
  DimensionMismatch,
  ZeroVector,
  ProviderUnavailable,
  EmptyReference,
  InvalidWeights,
  InvalidReward,
  RatioOverflow,
  InvalidArgument,
  ParseError,
  IoError,
  Internal,
};

std::string_view to_string(ErrorCode code);

/// Coarse classes used by the CLI (exit codes) and the service (HTTP status).
enum class ErrorClass { Input, Precondition, Cycle, Provider, Internal };

ErrorClass classify(ErrorCode code);

/// Every failure in the engine surfaces as this exception. `detail` carries
/// machine-readable context (cycle witness, byte offset, field name, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, nlohmann::json detail = nlohmann::json::object())
      : std::runtime_error(std::move(message)), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& detail() const noexcept { return detail_; }

  /// {"code": ..., "message": ..., "detail": ...}
  nlohmann::json to_json() const;

 private:
  ErrorCode code_;
  nlohmann::json detail_;
};

}  // namespace ceg
