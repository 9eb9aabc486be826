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

#ifndef TBSIG_SECURITY_ORACLE_HPP_
#define TBSIG_SECURITY_ORACLE_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "tbsig/bytes.hpp"
#include "tbsig/error.hpp"
#include "tbsig/group/group.hpp"
#include "tbsig/rng.hpp"

namespace tbsig::security {

enum class QuerySource { kAdversary, kSigner, kVerifier, kProgrammed };

constexpr std::string_view to_string(QuerySource s) {
  switch (s) {
    case QuerySource::kAdversary: return "adversary";
    case QuerySource::kSigner: return "signer";
    case QuerySource::kVerifier: return "verifier";
    case QuerySource::kProgrammed: return "programmed";
  }
  return "?";
}

template <PrimeOrderGroup G>
struct QueryRecord {
  std::size_t slot = 0;  // 1-based position among defined points
  Bytes input;
  typename G::Scalar reply;
  QuerySource source = QuerySource::kAdversary;
};

// Lazily sampled random function into Z_q. Every newly defined point takes
// the next slot. A fresh query at slot i is answered with script[i-1] when
// the script covers it, otherwise from the reply stream; this is what lets
// the forking reduction rerun an adversary against a partly replayed oracle.
template <PrimeOrderGroup G>
class ProgrammableOracle {
 public:
  using Scalar = typename G::Scalar;

  ProgrammableOracle(G grp, CounterRng replies, std::vector<std::optional<Scalar>> script = {})
      : grp_(std::move(grp)), replies_(std::move(replies)), script_(std::move(script)) {}

  // Fresh replies at `slot` are resampled until they differ from `value`.
  void avoid_at(std::size_t slot, const Scalar& value) { avoid_ = {slot, value}; }

  Scalar query(ByteView input, QuerySource source) {
    Bytes key(input.begin(), input.end());
    if (auto it = table_.find(key); it != table_.end()) return log_[it->second].reply;
    const std::size_t slot = log_.size() + 1;
    Scalar reply = fresh_reply(slot);
    define(std::move(key), reply, source);
    return reply;
  }

  void program(ByteView input, const Scalar& value) {
    Bytes key(input.begin(), input.end());
    if (table_.contains(key)) {
      throw Error(Errc::kProgrammingCollision, "oracle point already defined");
    }
    define(std::move(key), value, QuerySource::kProgrammed);
  }

  bool defined(ByteView input) const { return table_.contains(Bytes(input.begin(), input.end())); }

  std::optional<std::size_t> slot_of(ByteView input) const {
    auto it = table_.find(Bytes(input.begin(), input.end()));
    if (it == table_.end()) return std::nullopt;
    return log_[it->second].slot;
  }

  std::optional<Scalar> value_at(ByteView input) const {
    auto it = table_.find(Bytes(input.begin(), input.end()));
    if (it == table_.end()) return std::nullopt;
    return log_[it->second].reply;
  }

  const std::vector<QueryRecord<G>>& log() const { return log_; }

  std::size_t count(QuerySource source) const {
    std::size_t n = 0;
    for (const auto& r : log_) n += r.source == source ? 1 : 0;
    return n;
  }

  std::vector<Scalar> replies() const {
    std::vector<Scalar> out;
    for (const auto& r : log_) out.push_back(r.reply);
    return out;
  }

 private:
  Scalar fresh_reply(std::size_t slot) {
    if (slot <= script_.size() && script_[slot - 1]) return *script_[slot - 1];
    for (;;) {
      Scalar v = grp_.random_scalar(replies_);
      if (!avoid_ || avoid_->first != slot || !(v == avoid_->second)) return v;
    }
  }

  void define(Bytes key, const Scalar& reply, QuerySource source) {
    table_.emplace(key, log_.size());
    log_.push_back(QueryRecord<G>{log_.size() + 1, std::move(key), reply, source});
  }

  G grp_;
  CounterRng replies_;
  std::vector<std::optional<Scalar>> script_;
  std::optional<std::pair<std::size_t, Scalar>> avoid_;
  std::map<Bytes, std::size_t> table_;
  std::vector<QueryRecord<G>> log_;
};

// Adapts the oracle to the ChallengeHash call shape used by sign/verify.
template <PrimeOrderGroup G>
struct OracleHash {
  ProgrammableOracle<G>* oracle;
  QuerySource source;
  typename G::Scalar operator()(const G&, ByteView preimage) const {
    return oracle->query(preimage, source);
  }
};

}  // namespace tbsig::security

#endif  // TBSIG_SECURITY_ORACLE_HPP_
