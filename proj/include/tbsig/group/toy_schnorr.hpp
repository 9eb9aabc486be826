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

#ifndef TBSIG_GROUP_TOY_SCHNORR_HPP_
#define TBSIG_GROUP_TOY_SCHNORR_HPP_

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "tbsig/error.hpp"
#include "tbsig/group/group.hpp"

namespace tbsig {

struct ToyScalar {
  std::uint64_t value = 0;
  friend auto operator<=>(const ToyScalar&, const ToyScalar&) = default;
};

// Residue modulo p lying in the order-q subgroup of Z_p^*.
struct ToyElement {
  std::uint64_t residue = 1;
  friend auto operator<=>(const ToyElement&, const ToyElement&) = default;
};

// Schnorr group: the quadratic residues of Z_p^* for a safe prime p = 2q + 1.
// Small enough that every property can be checked by enumeration.
class ToySchnorrGroup {
 public:
  using Scalar = ToyScalar;
  using Element = ToyElement;
  static constexpr Backend kBackend = Backend::kToySchnorr;
  static constexpr std::size_t kElementSize = 8;

  ToySchnorrGroup() : ToySchnorrGroup(23, 11, 2) {}

  ToySchnorrGroup(std::uint64_t p, std::uint64_t q, std::uint64_t g)
      : p_(p), q_(q), g_(g) {
    if (p >= (std::uint64_t{1} << 32)) {
      throw Error(Errc::kInvalidInput, "toy modulus must fit in 32 bits");
    }
    if (!is_prime(q) || !is_prime(p) || p != 2 * q + 1) {
      throw Error(Errc::kInvalidInput,
                  "toy group needs primes p = 2q + 1, got p=" +
                      std::to_string(p) + " q=" + std::to_string(q));
    }
    if (g <= 1 || g >= p || pow_mod(g, q) != 1) {
      throw Error(Errc::kInvalidInput,
                  "generator " + std::to_string(g) + " does not have order q");
    }
  }

  std::uint64_t modulus() const { return p_; }
  std::uint64_t order() const { return q_; }

  Element generator() const { return Element{g_}; }
  Element identity() const { return Element{1}; }
  bool is_identity(const Element& e) const { return e.residue == 1; }

  Element exp(const Element& base, const Scalar& e) const {
    return Element{pow_mod(base.residue, e.value)};
  }
  Element mul(const Element& a, const Element& b) const {
    return Element{mul_mod(a.residue, b.residue, p_)};
  }
  // g^a * base^b
  Element mul_exp2(const Scalar& a, const Element& base, const Scalar& b) const {
    return mul(exp(generator(), a), exp(base, b));
  }

  Scalar scalar(std::uint64_t v) const { return Scalar{v % q_}; }
  bool is_zero(const Scalar& s) const { return s.value == 0; }
  Scalar scalar_add(const Scalar& a, const Scalar& b) const {
    return Scalar{(a.value + b.value) % q_};
  }
  Scalar scalar_sub(const Scalar& a, const Scalar& b) const {
    return Scalar{(a.value + q_ - b.value) % q_};
  }
  Scalar scalar_neg(const Scalar& a) const { return Scalar{(q_ - a.value) % q_}; }
  Scalar scalar_mul(const Scalar& a, const Scalar& b) const {
    return Scalar{mul_mod(a.value, b.value, q_)};
  }
  Scalar scalar_invert(const Scalar& a) const {
    if (a.value % q_ == 0) throw Error(Errc::kInvalidInput, "inverse of zero");
    // Extended Euclid over signed 64-bit; all values are below 2^32.
    std::int64_t r0 = static_cast<std::int64_t>(q_), r1 = static_cast<std::int64_t>(a.value % q_);
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
      std::int64_t quot = r0 / r1;
      std::int64_t r2 = r0 - quot * r1;
      r0 = r1;
      r1 = r2;
      std::int64_t t2 = t0 - quot * t1;
      t0 = t1;
      t1 = t2;
    }
    std::int64_t qs = static_cast<std::int64_t>(q_);
    return Scalar{static_cast<std::uint64_t>(((t0 % qs) + qs) % qs)};
  }

  std::array<std::uint8_t, kElementSize> serialize(const Element& e) const {
    std::array<std::uint8_t, kElementSize> out{};
    for (std::size_t i = 0; i < kElementSize; ++i) {
      out[i] = static_cast<std::uint8_t>(e.residue >> (56 - 8 * i));
    }
    return out;
  }

  std::optional<Element> deserialize(ByteView bytes) const {
    if (bytes.size() != kElementSize) return std::nullopt;
    std::uint64_t r = read_u64_be(bytes);
    if (r == 0 || r >= p_ || pow_mod(r, q_) != 1) return std::nullopt;
    return Element{r};
  }

  ScalarBytes scalar_bytes(const Scalar& s) const {
    ScalarBytes out{};
    for (std::size_t i = 0; i < 8; ++i) {
      out[kScalarSize - 1 - i] = static_cast<std::uint8_t>(s.value >> (8 * i));
    }
    return out;
  }

  std::optional<Scalar> parse_scalar(ByteView bytes) const {
    if (bytes.size() != kScalarSize) return std::nullopt;
    for (std::size_t i = 0; i < kScalarSize - 8; ++i) {
      if (bytes[i] != 0) return std::nullopt;
    }
    std::uint64_t v = read_u64_be(bytes.subspan(kScalarSize - 8));
    if (v >= q_) return std::nullopt;
    return Scalar{v};
  }

  // Digest read as a big-endian integer, reduced mod q.
  Scalar reduce_digest(const Digest& d) const {
    std::uint64_t acc = 0;
    for (std::uint8_t b : d) acc = (acc * 256 + b) % q_;
    return Scalar{acc};
  }

  // Rejection sampling on ceil(log2 q)-bit draws.
  template <ByteSource R>
  Scalar random_scalar(R& rng) const {
    const int bits = std::bit_width(q_ - 1);
    const std::size_t nbytes = static_cast<std::size_t>((bits + 7) / 8);
    const std::uint64_t mask =
        bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
    std::array<std::uint8_t, 8> buf{};
    for (;;) {
      rng.fill(std::span(buf).first(nbytes));
      std::uint64_t v = 0;
      for (std::size_t i = 0; i < nbytes; ++i) v = (v << 8) | buf[i];
      v &= mask;
      if (v < q_) return Scalar{v};
    }
  }

  Scalar dlog_bruteforce(const Element& y) const {
    std::uint64_t acc = 1;
    for (std::uint64_t x = 0; x < q_; ++x) {
      if (acc == y.residue) return Scalar{x};
      acc = mul_mod(acc, g_, p_);
    }
    throw Error(Errc::kNotFound,
                "residue " + std::to_string(y.residue) + " is not in <g>");
  }

  friend bool operator==(const ToySchnorrGroup&, const ToySchnorrGroup&) = default;

 private:
  static std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
  }

  std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e) const {
    std::uint64_t result = 1;
    base %= p_;
    while (e > 0) {
      if (e & 1) result = mul_mod(result, base, p_);
      base = mul_mod(base, base, p_);
      e >>= 1;
    }
    return result;
  }

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  }

  std::uint64_t p_;
  std::uint64_t q_;
  std::uint64_t g_;
};

static_assert(EnumerableGroup<ToySchnorrGroup>);

}  // namespace tbsig

#endif  // TBSIG_GROUP_TOY_SCHNORR_HPP_
