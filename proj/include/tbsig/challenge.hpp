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

#ifndef TBSIG_CHALLENGE_HPP_
#define TBSIG_CHALLENGE_HPP_

#include <optional>
#include <string_view>

#include "tbsig/bytes.hpp"
#include "tbsig/group/group.hpp"
#include "tbsig/sha256.hpp"

namespace tbsig {

inline constexpr std::string_view kVanillaTag = "TBSIG/v1/vanilla";
inline constexpr std::string_view kTimeBoundTag = "TBSIG/v1/timebound";

// The two fields the time-bound variant adds to the hash input.
struct TimeBoundFields {
  BlockHeight expiry = 0;
  bool flag = true;
};

template <PrimeOrderGroup G>
struct ChallengeInput {
  typename G::Element commitment;
  typename G::Element public_key;
  ByteView message;
  std::optional<TimeBoundFields> time_bound;  // nullopt: vanilla Schnorr
};

// Hash preimage layout (all integers big-endian):
//
//   tag || ser(R) || ser(Y) || u64 len(m) || m [|| u64 t_e || u8 flag]
//
// The tag selects the variant and the bracketed suffix is present only for
// the time-bound variant. Every field is fixed-width or length-prefixed, so
// distinct inputs never share a preimage.
template <PrimeOrderGroup G>
Bytes challenge_preimage(const G& grp, const ChallengeInput<G>& in) {
  const std::string_view tag = in.time_bound ? kTimeBoundTag : kVanillaTag;
  Bytes out;
  out.reserve(tag.size() + 2 * G::kElementSize + 8 + in.message.size() + 9);
  out.insert(out.end(), tag.begin(), tag.end());
  append(out, grp.serialize(in.commitment));
  append(out, grp.serialize(in.public_key));
  append_u64_be(out, in.message.size());
  append(out, in.message);
  if (in.time_bound) {
    append_u64_be(out, in.time_bound->expiry);
    out.push_back(in.time_bound->flag ? 0x01 : 0x00);
  }
  return out;
}

// The production hash: SHA-256 of the preimage, read big-endian, mod q.
// The security harness swaps this for a programmable oracle with the same
// call shape.
struct Sha256Challenge {
  template <PrimeOrderGroup G>
  typename G::Scalar operator()(const G& grp, ByteView preimage) const {
    return grp.reduce_digest(sha256(preimage));
  }
};

template <PrimeOrderGroup G>
typename G::Scalar compute_challenge(const G& grp, const ChallengeInput<G>& in) {
  return Sha256Challenge{}(grp, challenge_preimage(grp, in));
}

}  // namespace tbsig

#endif  // TBSIG_CHALLENGE_HPP_
