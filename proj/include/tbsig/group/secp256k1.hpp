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

#ifndef TBSIG_GROUP_SECP256K1_HPP_
#define TBSIG_GROUP_SECP256K1_HPP_

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/obj_mac.h>

#include <algorithm>
#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <optional>

#include "tbsig/error.hpp"
#include "tbsig/group/group.hpp"

namespace tbsig {

using U256 = boost::multiprecision::uint256_t;
using U512 = boost::multiprecision::uint512_t;

struct CurveScalar {
  U256 value;
  friend bool operator==(const CurveScalar&, const CurveScalar&) = default;
};

// Compressed SEC1 encoding; 33 zero bytes stand for the point at infinity.
struct CurvePoint {
  std::array<std::uint8_t, 33> encoded{};
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

namespace detail {

struct BnDeleter {
  void operator()(BIGNUM* p) const { BN_clear_free(p); }
};
struct BnCtxDeleter {
  void operator()(BN_CTX* p) const { BN_CTX_free(p); }
};
struct EcPointDeleter {
  void operator()(EC_POINT* p) const { EC_POINT_free(p); }
};
struct EcGroupDeleter {
  void operator()(EC_GROUP* p) const { EC_GROUP_free(p); }
};

using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;
using BnCtxPtr = std::unique_ptr<BN_CTX, BnCtxDeleter>;
using EcPointPtr = std::unique_ptr<EC_POINT, EcPointDeleter>;

inline U256 u256_from_be(ByteView bytes) {
  U256 v = 0;
  boost::multiprecision::import_bits(v, bytes.begin(), bytes.end(), 8, true);
  return v;
}

inline ScalarBytes u256_to_be(const U256& v) {
  ScalarBytes out{};
  std::array<std::uint8_t, kScalarSize> tmp{};
  auto end = boost::multiprecision::export_bits(v, tmp.begin(), 8, true);
  const auto n = static_cast<std::size_t>(end - tmp.begin());
  std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(n),
            out.begin() + static_cast<std::ptrdiff_t>(kScalarSize - n));
  return out;
}

}  // namespace detail

// secp256k1 via OpenSSL's EC_POINT arithmetic. Scalar multiplication by a
// single scalar goes through OpenSSL's constant-time ladder.
class Secp256k1Group {
 public:
  using Scalar = CurveScalar;
  using Element = CurvePoint;
  static constexpr Backend kBackend = Backend::kCurve256;
  static constexpr std::size_t kElementSize = 33;

  Secp256k1Group() {
    EC_GROUP* g = EC_GROUP_new_by_curve_name(NID_secp256k1);
    if (g == nullptr) throw Error(Errc::kInvalidInput, "secp256k1 unavailable");
    group_.reset(g, detail::EcGroupDeleter{});
    std::array<std::uint8_t, kScalarSize> buf{};
    const BIGNUM* order = EC_GROUP_get0_order(g);
    BN_bn2binpad(order, buf.data(), static_cast<int>(buf.size()));
    order_ = detail::u256_from_be(buf);
    generator_ = encode(EC_GROUP_get0_generator(g), ctx().get());
  }

  const U256& order() const { return order_; }

  Element generator() const { return generator_; }
  Element identity() const { return Element{}; }
  bool is_identity(const Element& e) const { return e == Element{}; }

  Element exp(const Element& base, const Scalar& e) const {
    auto c = ctx();
    auto bn = to_bn(e);
    detail::EcPointPtr r(EC_POINT_new(group_.get()));
    int ok = 0;
    if (base == generator_) {
      ok = EC_POINT_mul(group_.get(), r.get(), bn.get(), nullptr, nullptr, c.get());
    } else {
      auto p = decode(base, c.get());
      ok = EC_POINT_mul(group_.get(), r.get(), nullptr, p.get(), bn.get(), c.get());
    }
    if (ok != 1) throw Error(Errc::kInvalidInput, "EC_POINT_mul failed");
    return encode(r.get(), c.get());
  }

  Element mul(const Element& a, const Element& b) const {
    auto c = ctx();
    auto pa = decode(a, c.get());
    auto pb = decode(b, c.get());
    detail::EcPointPtr r(EC_POINT_new(group_.get()));
    if (EC_POINT_add(group_.get(), r.get(), pa.get(), pb.get(), c.get()) != 1) {
      throw Error(Errc::kInvalidInput, "EC_POINT_add failed");
    }
    return encode(r.get(), c.get());
  }

  // g^a * base^b in one simultaneous multiplication (verification path).
  Element mul_exp2(const Scalar& a, const Element& base, const Scalar& b) const {
    auto c = ctx();
    auto p = decode(base, c.get());
    auto ba = to_bn(a);
    auto bb = to_bn(b);
    detail::EcPointPtr r(EC_POINT_new(group_.get()));
    if (EC_POINT_mul(group_.get(), r.get(), ba.get(), p.get(), bb.get(), c.get()) != 1) {
      throw Error(Errc::kInvalidInput, "EC_POINT_mul failed");
    }
    return encode(r.get(), c.get());
  }

  Scalar scalar(std::uint64_t v) const { return Scalar{U256(v) % order_}; }
  bool is_zero(const Scalar& s) const { return s.value == 0; }
  Scalar scalar_add(const Scalar& a, const Scalar& b) const {
    return Scalar{static_cast<U256>((U512(a.value) + b.value) % order_)};
  }
  Scalar scalar_sub(const Scalar& a, const Scalar& b) const {
    return Scalar{static_cast<U256>((U512(a.value) + order_ - b.value) % order_)};
  }
  Scalar scalar_neg(const Scalar& a) const {
    return a.value == 0 ? a : Scalar{order_ - a.value};
  }
  Scalar scalar_mul(const Scalar& a, const Scalar& b) const {
    return Scalar{static_cast<U256>((U512(a.value) * b.value) % order_)};
  }
  Scalar scalar_invert(const Scalar& a) const {
    if (a.value == 0) throw Error(Errc::kInvalidInput, "inverse of zero");
    // Fermat: a^(n-2) mod n, n prime.
    return Scalar{boost::multiprecision::powm(a.value, order_ - 2, order_)};
  }

  std::array<std::uint8_t, kElementSize> serialize(const Element& e) const {
    return e.encoded;
  }

  std::optional<Element> deserialize(ByteView bytes) const {
    if (bytes.size() != kElementSize) return std::nullopt;
    Element e;
    std::copy(bytes.begin(), bytes.end(), e.encoded.begin());
    if (is_identity(e)) return e;
    if (bytes[0] != 0x02 && bytes[0] != 0x03) return std::nullopt;
    auto c = ctx();
    detail::EcPointPtr p(EC_POINT_new(group_.get()));
    if (EC_POINT_oct2point(group_.get(), p.get(), bytes.data(), bytes.size(), c.get()) != 1) {
      return std::nullopt;
    }
    return e;
  }

  ScalarBytes scalar_bytes(const Scalar& s) const { return detail::u256_to_be(s.value); }

  std::optional<Scalar> parse_scalar(ByteView bytes) const {
    if (bytes.size() != kScalarSize) return std::nullopt;
    U256 v = detail::u256_from_be(bytes);
    if (v >= order_) return std::nullopt;
    return Scalar{v};
  }

  Scalar reduce_digest(const Digest& d) const {
    return Scalar{detail::u256_from_be(d) % order_};
  }

  // Rejection sampling on 256-bit draws; rejection probability is ~2^-128.
  template <ByteSource R>
  Scalar random_scalar(R& rng) const {
    ScalarBytes buf{};
    for (;;) {
      rng.fill(buf);
      U256 v = detail::u256_from_be(buf);
      if (v < order_) return Scalar{v};
    }
  }

  friend bool operator==(const Secp256k1Group&, const Secp256k1Group&) { return true; }

 private:
  static detail::BnCtxPtr ctx() {
    detail::BnCtxPtr c(BN_CTX_new());
    if (!c) throw Error(Errc::kInvalidInput, "BN_CTX_new failed");
    return c;
  }

  detail::BnPtr to_bn(const Scalar& s) const {
    ScalarBytes be = scalar_bytes(s);
    detail::BnPtr bn(BN_bin2bn(be.data(), static_cast<int>(be.size()), nullptr));
    if (!bn) throw Error(Errc::kInvalidInput, "BN_bin2bn failed");
    BN_set_flags(bn.get(), BN_FLG_CONSTTIME);
    return bn;
  }

  detail::EcPointPtr decode(const Element& e, BN_CTX* c) const {
    detail::EcPointPtr p(EC_POINT_new(group_.get()));
    if (is_identity(e)) {
      EC_POINT_set_to_infinity(group_.get(), p.get());
      return p;
    }
    if (EC_POINT_oct2point(group_.get(), p.get(), e.encoded.data(), e.encoded.size(), c) != 1) {
      throw Error(Errc::kMalformedEncoding, "point not on secp256k1");
    }
    return p;
  }

  Element encode(const EC_POINT* p, BN_CTX* c) const {
    Element e;
    if (EC_POINT_is_at_infinity(group_.get(), p) == 1) return e;
    std::size_t n = EC_POINT_point2oct(group_.get(), p, POINT_CONVERSION_COMPRESSED,
                                       e.encoded.data(), e.encoded.size(), c);
    if (n != kElementSize) throw Error(Errc::kInvalidInput, "EC_POINT_point2oct failed");
    return e;
  }

  std::shared_ptr<EC_GROUP> group_;
  U256 order_;
  Element generator_;
};

static_assert(PrimeOrderGroup<Secp256k1Group>);

}  // namespace tbsig

#endif  // TBSIG_GROUP_SECP256K1_HPP_
