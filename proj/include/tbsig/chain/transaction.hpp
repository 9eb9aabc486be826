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

#ifndef TBSIG_CHAIN_TRANSACTION_HPP_
#define TBSIG_CHAIN_TRANSACTION_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <type_traits>
#include <variant>

#include "tbsig/bytes.hpp"
#include "tbsig/group/group.hpp"
#include "tbsig/rng.hpp"
#include "tbsig/schnorr.hpp"
#include "tbsig/sha256.hpp"

namespace tbsig::chain {

inline constexpr std::string_view kTxTag = "TBSIG/tx/v1";

// Fees are integer amounts per unit of gas; every transaction uses one unit.
template <PrimeOrderGroup G>
struct Transaction {
  using Signature = std::variant<TimeBoundSignature<G>, VanillaSignature<G>>;

  typename G::Element sender;
  Bytes payload;
  std::uint64_t fee_cap = 0;
  std::uint64_t tip = 0;
  BlockHeight issue_height = 0;
  Signature signature;

  friend bool operator==(const Transaction&, const Transaction&) = default;
};

// The bytes covered by the signature: everything except the signature.
template <PrimeOrderGroup G>
Bytes signing_bytes(const G& grp, const typename G::Element& sender, ByteView payload,
                    std::uint64_t fee_cap, std::uint64_t tip, BlockHeight issue_height) {
  Bytes out = to_bytes(kTxTag);
  append(out, grp.serialize(sender));
  append_u64_be(out, payload.size());
  append(out, payload);
  append_u64_be(out, fee_cap);
  append_u64_be(out, tip);
  append_u64_be(out, issue_height);
  return out;
}

template <PrimeOrderGroup G>
Bytes signing_bytes(const G& grp, const Transaction<G>& tx) {
  return signing_bytes(grp, tx.sender, tx.payload, tx.fee_cap, tx.tip, tx.issue_height);
}

// Canonical serialization: signing bytes || kind byte || wire signature.
template <PrimeOrderGroup G>
Bytes serialize(const G& grp, const Transaction<G>& tx) {
  Bytes out = signing_bytes(grp, tx);
  std::visit(
      [&](const auto& sig) {
        out.push_back(std::is_same_v<std::decay_t<decltype(sig)>, TimeBoundSignature<G>> ? 1 : 0);
        append(out, encode_signature(grp, sig));
      },
      tx.signature);
  return out;
}

using TxId = Digest;

template <PrimeOrderGroup G>
TxId tx_id(const G& grp, const Transaction<G>& tx) {
  return sha256(serialize(grp, tx));
}

// nullopt for vanilla transactions, which never expire.
template <PrimeOrderGroup G>
std::optional<BlockHeight> expiry_of(const Transaction<G>& tx) {
  if (const auto* tb = std::get_if<TimeBoundSignature<G>>(&tx.signature)) return tb->expiry;
  return std::nullopt;
}

template <PrimeOrderGroup G>
bool verify_transaction(const G& grp, const Transaction<G>& tx, BlockHeight height) {
  const Bytes msg = signing_bytes(grp, tx);
  if (const auto* tb = std::get_if<TimeBoundSignature<G>>(&tx.signature)) {
    return tb_verify(grp, tx.sender, msg, *tb, height);
  }
  return schnorr_verify(grp, tx.sender, msg, std::get<VanillaSignature<G>>(tx.signature));
}

template <PrimeOrderGroup G, ByteSource R>
Transaction<G> make_tb_transaction(const G& grp, const KeyPair<G>& kp, ByteView payload,
                                   std::uint64_t fee_cap, std::uint64_t tip,
                                   BlockHeight current, BlockHeight expiry, R& rng) {
  const Bytes msg = signing_bytes(grp, kp.public_key, payload, fee_cap, tip, current);
  return Transaction<G>{kp.public_key, Bytes(payload.begin(), payload.end()), fee_cap, tip,
                        current, tb_sign(grp, kp, msg, current, expiry, rng)};
}

template <PrimeOrderGroup G, ByteSource R>
Transaction<G> make_vanilla_transaction(const G& grp, const KeyPair<G>& kp, ByteView payload,
                                        std::uint64_t fee_cap, std::uint64_t tip,
                                        BlockHeight current, R& rng) {
  const Bytes msg = signing_bytes(grp, kp.public_key, payload, fee_cap, tip, current);
  return Transaction<G>{kp.public_key, Bytes(payload.begin(), payload.end()), fee_cap, tip,
                        current, schnorr_sign(grp, kp, msg, rng)};
}

}  // namespace tbsig::chain

#endif  // TBSIG_CHAIN_TRANSACTION_HPP_
