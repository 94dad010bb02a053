// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace ceg::detail {

/// Byte offset of the value addressed by an RFC 6901 pointer inside a JSON
/// text that is already known to be well formed. "" addresses the root.
/// Object keys are compared without unescaping.
std::optional<std::size_t> locate_json_pointer(std::string_view text, std::string_view pointer);

}  // namespace ceg::detail
