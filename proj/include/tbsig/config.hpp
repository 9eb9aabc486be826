/*
 * Copyright 2026 The tbsig Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TBSIG_CONFIG_HPP_
#define TBSIG_CONFIG_HPP_

#include <cstddef>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "tbsig/error.hpp"

namespace tbsig::config {

// Parses JSON text; syntax errors are reported as "<origin>:<line>:<col>".
inline nlohmann::json parse(const std::string& text, const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(Errc::kConfig, origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                   ": " + e.what());
  }
}

inline nlohmann::json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kConfig, path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

// Field access with a dotted path in the diagnostic, e.g.
// "transactions[2].tip: expected number".
class Node {
 public:
  Node(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const nlohmann::json& json() const { return j_; }
  const std::string& path() const { return path_; }

  bool has(const std::string& key) const {
    return j_.is_object() && j_.contains(key) && !j_.at(key).is_null();
  }

  Node at(const std::string& key) const {
    if (!j_.is_object()) fail(path_, "expected object");
    if (!j_.contains(key)) fail(join(key), "missing field");
    return Node(j_.at(key), join(key));
  }

  Node at(std::size_t i) const { return Node(j_.at(i), path_ + "[" + std::to_string(i) + "]"); }

  std::size_t size() const {
    if (!j_.is_array()) fail(path_, "expected array");
    return j_.size();
  }

  double number() const {
    if (!j_.is_number()) fail(path_, "expected number");
    return j_.get<double>();
  }

  std::uint64_t uint() const {
    if (!j_.is_number_unsigned()) fail(path_, "expected non-negative integer");
    return j_.get<std::uint64_t>();
  }

  bool boolean() const {
    if (!j_.is_boolean()) fail(path_, "expected boolean");
    return j_.get<bool>();
  }

  std::string string() const {
    if (!j_.is_string()) fail(path_, "expected string");
    return j_.get<std::string>();
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? at(key).number() : fallback;
  }
  std::uint64_t uint_or(const std::string& key, std::uint64_t fallback) const {
    return has(key) ? at(key).uint() : fallback;
  }
  bool boolean_or(const std::string& key, bool fallback) const {
    return has(key) ? at(key).boolean() : fallback;
  }
  std::string string_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? at(key).string() : fallback;
  }

  [[noreturn]] static void fail(const std::string& path, const std::string& msg) {
    throw Error(Errc::kConfig, (path.empty() ? std::string("<root>") : path) + ": " + msg);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(path_, msg); }

 private:
  std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const nlohmann::json& j_;
  std::string path_;
};

}  // namespace tbsig::config

#endif  // TBSIG_CONFIG_HPP_
