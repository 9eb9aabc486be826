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

#ifndef TBSIG_SCHNORR_HPP_
#define TBSIG_SCHNORR_HPP_

#include <cstddef>
#include <optional>
#include <string>

#include "tbsig/bytes.hpp"
#include "tbsig/challenge.hpp"
#include "tbsig/error.hpp"
#include "tbsig/group/group.hpp"
#include "tbsig/rng.hpp"

namespace tbsig {

template <PrimeOrderGroup G>
struct KeyPair {
  typename G::Scalar secret;
  typename G::Element public_key;
};

// sigma = (R, z, t_e)
template <PrimeOrderGroup G>
struct TimeBoundSignature {
  typename G::Element commitment;
  typename G::Scalar response;
  BlockHeight expiry = 0;
  friend bool operator==(const TimeBoundSignature&, const TimeBoundSignature&) = default;
};

// sigma = (R, z)
template <PrimeOrderGroup G>
struct VanillaSignature {
  typename G::Element commitment;
  typename G::Scalar response;
  friend bool operator==(const VanillaSignature&, const VanillaSignature&) = default;
};

// Callable computing a challenge scalar from a hash preimage. Sha256Challenge
// is the real one; the security harness plugs in a programmable oracle.
template <class H, class G>
concept ChallengeHash = PrimeOrderGroup<G> && requires(H& h, const G& grp, ByteView preimage) {
  { h(grp, preimage) } -> std::same_as<typename G::Scalar>;
};

// f_t: 1 iff the chain has not moved past the expiry height.
constexpr bool time_check(BlockHeight current, BlockHeight expiry) {
  return current <= expiry;
}

template <PrimeOrderGroup G>
KeyPair<G> keypair_from_secret(const G& grp, const typename G::Scalar& secret) {
  return KeyPair<G>{secret, grp.exp(grp.generator(), secret)};
}

// Secret drawn uniformly from the nonzero scalars.
template <PrimeOrderGroup G, ByteSource R>
KeyPair<G> keygen(const G& grp, R& rng) {
  for (;;) {
    auto s = grp.random_scalar(rng);
    if (!grp.is_zero(s)) return keypair_from_secret(grp, s);
  }
}

namespace detail {

template <PrimeOrderGroup G, ByteSource R>
typename G::Scalar random_nonce(const G& grp, R& rng) {
  for (;;) {
    auto k = grp.random_scalar(rng);
    if (!grp.is_zero(k)) return k;
  }
}

// z = k + s*c
template <PrimeOrderGroup G>
typename G::Scalar respond(const G& grp, const typename G::Scalar& nonce,
                           const typename G::Scalar& secret,
                           const typename G::Scalar& challenge) {
  return grp.scalar_add(nonce, grp.scalar_mul(secret, challenge));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Time-bound signatures

template <PrimeOrderGroup G, class Hash>
  requires ChallengeHash<Hash, G>
TimeBoundSignature<G> tb_sign_with_nonce(const G& grp, Hash& hash, const KeyPair<G>& kp,
                                         ByteView message, BlockHeight current,
                                         BlockHeight expiry,
                                         const typename G::Scalar& nonce) {
  if (current >= expiry) {
    throw Error(Errc::kExpiryNotInFuture,
                "expiry " + std::to_string(expiry) + " must be above current height " +
                    std::to_string(current));
  }
  if (grp.is_zero(nonce)) throw Error(Errc::kInvalidInput, "zero nonce");
  const auto commitment = grp.exp(grp.generator(), nonce);
  // The signer always hashes flag = 1: it only signs while current < expiry.
  const ChallengeInput<G> in{commitment, kp.public_key, message,
                             TimeBoundFields{expiry, time_check(current, expiry)}};
  const auto c = hash(grp, challenge_preimage(grp, in));
  return TimeBoundSignature<G>{commitment, detail::respond(grp, nonce, kp.secret, c), expiry};
}

template <PrimeOrderGroup G, class Hash, ByteSource R>
  requires ChallengeHash<Hash, G>
TimeBoundSignature<G> tb_sign_with(const G& grp, Hash& hash, const KeyPair<G>& kp,
                                   ByteView message, BlockHeight current,
                                   BlockHeight expiry, R& rng) {
  if (current >= expiry) {
    throw Error(Errc::kExpiryNotInFuture,
                "expiry " + std::to_string(expiry) + " must be above current height " +
                    std::to_string(current));
  }
  return tb_sign_with_nonce(grp, hash, kp, message, current, expiry,
                            detail::random_nonce(grp, rng));
}

template <PrimeOrderGroup G, ByteSource R>
TimeBoundSignature<G> tb_sign(const G& grp, const KeyPair<G>& kp, ByteView message,
                              BlockHeight current, BlockHeight expiry, R& rng) {
  Sha256Challenge hash;
  return tb_sign_with(grp, hash, kp, message, current, expiry, rng);
}

// The bare verification equation g^z * Y^-c == R with the flag recomputed
// from the verifier's height. Exposed separately so the hash-binding of the
// flag can be studied without the explicit expiry gate in tb_verify.
template <PrimeOrderGroup G, class Hash>
  requires ChallengeHash<Hash, G>
bool tb_equation_holds(const G& grp, Hash& hash, const typename G::Element& public_key,
                       ByteView message, const TimeBoundSignature<G>& sig,
                       BlockHeight current) {
  const ChallengeInput<G> in{sig.commitment, public_key, message,
                             TimeBoundFields{sig.expiry, time_check(current, sig.expiry)}};
  const auto c = hash(grp, challenge_preimage(grp, in));
  return grp.mul_exp2(sig.response, public_key, grp.scalar_neg(c)) == sig.commitment;
}

template <PrimeOrderGroup G, class Hash>
  requires ChallengeHash<Hash, G>
bool tb_verify_with(const G& grp, Hash& hash, const typename G::Element& public_key,
                    ByteView message, const TimeBoundSignature<G>& sig,
                    BlockHeight current) {
  if (grp.is_identity(sig.commitment)) return false;
  if (!time_check(current, sig.expiry)) return false;
  return tb_equation_holds(grp, hash, public_key, message, sig, current);
}

template <PrimeOrderGroup G>
bool tb_verify(const G& grp, const typename G::Element& public_key, ByteView message,
               const TimeBoundSignature<G>& sig, BlockHeight current) {
  Sha256Challenge hash;
  return tb_verify_with(grp, hash, public_key, message, sig, current);
}

// ---------------------------------------------------------------------------
// Vanilla Schnorr

template <PrimeOrderGroup G, class Hash>
  requires ChallengeHash<Hash, G>
VanillaSignature<G> schnorr_sign_with_nonce(const G& grp, Hash& hash, const KeyPair<G>& kp,
                                            ByteView message,
                                            const typename G::Scalar& nonce) {
  if (grp.is_zero(nonce)) throw Error(Errc::kInvalidInput, "zero nonce");
  const auto commitment = grp.exp(grp.generator(), nonce);
  const ChallengeInput<G> in{commitment, kp.public_key, message, std::nullopt};
  const auto c = hash(grp, challenge_preimage(grp, in));
  return VanillaSignature<G>{commitment, detail::respond(grp, nonce, kp.secret, c)};
}

template <PrimeOrderGroup G, ByteSource R>
VanillaSignature<G> schnorr_sign(const G& grp, const KeyPair<G>& kp, ByteView message, R& rng) {
  Sha256Challenge hash;
  return schnorr_sign_with_nonce(grp, hash, kp, message, detail::random_nonce(grp, rng));
}

template <PrimeOrderGroup G, class Hash>
  requires ChallengeHash<Hash, G>
bool schnorr_verify_with(const G& grp, Hash& hash, const typename G::Element& public_key,
                         ByteView message, const VanillaSignature<G>& sig) {
  if (grp.is_identity(sig.commitment)) return false;
  const ChallengeInput<G> in{sig.commitment, public_key, message, std::nullopt};
  const auto c = hash(grp, challenge_preimage(grp, in));
  return grp.mul_exp2(sig.response, public_key, grp.scalar_neg(c)) == sig.commitment;
}

template <PrimeOrderGroup G>
bool schnorr_verify(const G& grp, const typename G::Element& public_key, ByteView message,
                    const VanillaSignature<G>& sig) {
  Sha256Challenge hash;
  return schnorr_verify_with(grp, hash, public_key, message, sig);
}

// ---------------------------------------------------------------------------
// Wire format: ser(R) || z (32 bytes BE) [|| t_e (8 bytes BE)]

template <PrimeOrderGroup G>
inline constexpr std::size_t kVanillaSignatureSize = G::kElementSize + kScalarSize;

template <PrimeOrderGroup G>
inline constexpr std::size_t kTimeBoundSignatureSize = kVanillaSignatureSize<G> + 8;

template <PrimeOrderGroup G>
Bytes encode_signature(const G& grp, const VanillaSignature<G>& sig) {
  Bytes out;
  out.reserve(kVanillaSignatureSize<G>);
  append(out, grp.serialize(sig.commitment));
  append(out, grp.scalar_bytes(sig.response));
  return out;
}

template <PrimeOrderGroup G>
Bytes encode_signature(const G& grp, const TimeBoundSignature<G>& sig) {
  Bytes out;
  out.reserve(kTimeBoundSignatureSize<G>);
  append(out, grp.serialize(sig.commitment));
  append(out, grp.scalar_bytes(sig.response));
  append_u64_be(out, sig.expiry);
  return out;
}

template <PrimeOrderGroup G>
std::optional<VanillaSignature<G>> decode_vanilla_signature(const G& grp, ByteView wire) {
  if (wire.size() != kVanillaSignatureSize<G>) return std::nullopt;
  auto r = grp.deserialize(wire.first(G::kElementSize));
  auto z = grp.parse_scalar(wire.subspan(G::kElementSize, kScalarSize));
  if (!r || !z) return std::nullopt;
  return VanillaSignature<G>{*r, *z};
}

template <PrimeOrderGroup G>
std::optional<TimeBoundSignature<G>> decode_tb_signature(const G& grp, ByteView wire) {
  if (wire.size() != kTimeBoundSignatureSize<G>) return std::nullopt;
  auto base = decode_vanilla_signature(grp, wire.first(kVanillaSignatureSize<G>));
  if (!base) return std::nullopt;
  return TimeBoundSignature<G>{base->commitment, base->response,
                               read_u64_be(wire.subspan(kVanillaSignatureSize<G>))};
}

}  // namespace tbsig

#endif  // TBSIG_SCHNORR_HPP_
