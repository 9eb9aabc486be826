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

#ifndef TBSIG_GROUP_GROUP_HPP_
#define TBSIG_GROUP_GROUP_HPP_

#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "tbsig/bytes.hpp"
#include "tbsig/rng.hpp"
#include "tbsig/sha256.hpp"

namespace tbsig {

enum class Backend { kCurve256, kToySchnorr };

constexpr std::string_view to_string(Backend b) {
  return b == Backend::kCurve256 ? "curve" : "toy";
}

// Scalars travel on the wire as 32 big-endian bytes regardless of backend.
inline constexpr std::size_t kScalarSize = 32;
using ScalarBytes = std::array<std::uint8_t, kScalarSize>;

// A cyclic group of prime order q with a fixed generator, together with its
// scalar field Z_q. Both backends are value-semantic: elements and scalars
// are plain comparable values, and the group object only carries parameters.
template <class G>
concept PrimeOrderGroup =
    requires(const G& grp, const typename G::Element& e,
             const typename G::Scalar& s, ByteView bytes, const Digest& digest,
             CounterRng& rng, std::uint64_t small) {
      requires std::equality_comparable<typename G::Element>;
      requires std::equality_comparable<typename G::Scalar>;
      { G::kBackend } -> std::convertible_to<Backend>;
      { G::kElementSize } -> std::convertible_to<std::size_t>;
      { grp.generator() } -> std::same_as<typename G::Element>;
      { grp.identity() } -> std::same_as<typename G::Element>;
      { grp.is_identity(e) } -> std::same_as<bool>;
      { grp.exp(e, s) } -> std::same_as<typename G::Element>;
      { grp.mul(e, e) } -> std::same_as<typename G::Element>;
      { grp.mul_exp2(s, e, s) } -> std::same_as<typename G::Element>;
      { grp.scalar(small) } -> std::same_as<typename G::Scalar>;
      { grp.scalar_add(s, s) } -> std::same_as<typename G::Scalar>;
      { grp.scalar_sub(s, s) } -> std::same_as<typename G::Scalar>;
      { grp.scalar_neg(s) } -> std::same_as<typename G::Scalar>;
      { grp.scalar_mul(s, s) } -> std::same_as<typename G::Scalar>;
      { grp.scalar_invert(s) } -> std::same_as<typename G::Scalar>;
      { grp.is_zero(s) } -> std::same_as<bool>;
      { grp.serialize(e) } -> std::same_as<std::array<std::uint8_t, G::kElementSize>>;
      { grp.deserialize(bytes) } -> std::same_as<std::optional<typename G::Element>>;
      { grp.scalar_bytes(s) } -> std::same_as<ScalarBytes>;
      { grp.parse_scalar(bytes) } -> std::same_as<std::optional<typename G::Scalar>>;
      { grp.reduce_digest(digest) } -> std::same_as<typename G::Scalar>;
      { grp.random_scalar(rng) } -> std::same_as<typename G::Scalar>;
    };

// Groups small enough to enumerate expose an exhaustive discrete log.
template <class G>
concept EnumerableGroup = PrimeOrderGroup<G> && requires(const G& grp, const typename G::Element& e) {
  { grp.dlog_bruteforce(e) } -> std::same_as<typename G::Scalar>;
  { grp.order() } -> std::convertible_to<std::uint64_t>;
};

template <PrimeOrderGroup G>
Bytes serialize_to_bytes(const G& grp, const typename G::Element& e) {
  auto a = grp.serialize(e);
  return Bytes(a.begin(), a.end());
}

}  // namespace tbsig

#endif  // TBSIG_GROUP_GROUP_HPP_
