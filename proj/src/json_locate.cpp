// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include "json_locate.hpp"

#include <charconv>
#include <string>
#include <vector>

namespace ceg::detail {

namespace {

class Walker {
 public:
  explicit Walker(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void advance() { ++pos_; }

  // Raw string body between the quotes; pos_ must sit on the opening quote.
  std::string_view read_string() {
    const std::size_t start = ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') pos_ += text_[pos_] == '\\' ? 2 : 1;
    const std::string_view body = text_.substr(start, pos_ - start);
    ++pos_;
    return body;
  }

  void skip_value() {
    skip_ws();
    const char c = peek();
    if (c == '"') {
      read_string();
    } else if (c == '{' || c == '[') {
      int depth = 0;
      while (pos_ < text_.size()) {
        const char d = text_[pos_];
        if (d == '"') {
          read_string();
          continue;
        }
        if (d == '{' || d == '[') ++depth;
        if (d == '}' || d == ']') {
          if (--depth == 0) {
            ++pos_;
            return;
          }
        }
        ++pos_;
      }
    } else {
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '}' && text_[pos_] != ']' &&
             text_[pos_] != ' ' && text_[pos_] != '\n' && text_[pos_] != '\t' && text_[pos_] != '\r') {
        ++pos_;
      }
    }
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split_pointer(std::string_view pointer) {
  std::vector<std::string> tokens;
  if (pointer.empty()) return tokens;
  std::size_t i = 1;
  std::string current;
  while (i <= pointer.size()) {
    if (i == pointer.size() || pointer[i] == '/') {
      tokens.push_back(current);
      current.clear();
    } else if (pointer[i] == '~' && i + 1 < pointer.size()) {
      current.push_back(pointer[i + 1] == '1' ? '/' : '~');
      ++i;
    } else {
      current.push_back(pointer[i]);
    }
    ++i;
  }
  return tokens;
}

}  // namespace

std::optional<std::size_t> locate_json_pointer(std::string_view text, std::string_view pointer) {
  if (!pointer.empty() && pointer.front() != '/') return std::nullopt;
  Walker w(text);
  w.skip_ws();
  for (const std::string& token : split_pointer(pointer)) {
    w.skip_ws();
    if (w.peek() == '{') {
      w.advance();
      bool found = false;
      while (true) {
        w.skip_ws();
        if (w.peek() != '"') return std::nullopt;
        const std::string_view key = w.read_string();
        w.skip_ws();
        if (w.peek() != ':') return std::nullopt;
        w.advance();
        w.skip_ws();
        if (key == token) {
          found = true;
          break;
        }
        w.skip_value();
        w.skip_ws();
        if (w.peek() != ',') return std::nullopt;
        w.advance();
      }
      if (!found) return std::nullopt;
    } else if (w.peek() == '[') {
      std::size_t index = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), index);
      if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
      w.advance();
      for (std::size_t k = 0; k < index; ++k) {
        w.skip_value();
        w.skip_ws();
        if (w.peek() != ',') return std::nullopt;
        w.advance();
      }
      w.skip_ws();
      if (w.peek() == ']') return std::nullopt;
    } else {
      return std::nullopt;
    }
  }
  w.skip_ws();
  return w.pos();
}

}  // namespace ceg::detail
