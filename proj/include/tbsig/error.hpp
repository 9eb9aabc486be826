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

#ifndef TBSIG_ERROR_HPP_
#define TBSIG_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace tbsig {

enum class Errc {
  kInvalidInput,
  kNotFound,
  kMalformedEncoding,
  kExpiryNotInFuture,
  kProgrammingCollision,
  kRuleViolation,
  kNotAccepting,
  kEqualChallenges,
  kExtractionMismatch,
  kNoThreshold,
  kConfig,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::kInvalidInput: return "InvalidInput";
    case Errc::kNotFound: return "NotFound";
    case Errc::kMalformedEncoding: return "MalformedEncoding";
    case Errc::kExpiryNotInFuture: return "ExpiryNotInFuture";
    case Errc::kProgrammingCollision: return "ProgrammingCollision";
    case Errc::kRuleViolation: return "RuleViolation";
    case Errc::kNotAccepting: return "NotAccepting";
    case Errc::kEqualChallenges: return "EqualChallenges";
    case Errc::kExtractionMismatch: return "ExtractionMismatch";
    case Errc::kNoThreshold: return "NoThreshold";
    case Errc::kConfig: return "ConfigError";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tbsig

#endif  // TBSIG_ERROR_HPP_
