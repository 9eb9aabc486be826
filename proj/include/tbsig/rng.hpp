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

#ifndef TBSIG_RNG_HPP_
#define TBSIG_RNG_HPP_

#include <openssl/rand.h>

#include <concepts>
#include <cstdint>
#include <cstring>
#include <span>

#include "tbsig/bytes.hpp"
#include "tbsig/error.hpp"
#include "tbsig/sha256.hpp"

namespace tbsig {

// Anything that can fill a buffer with uniform bytes. All randomness in the
// library is injected through this interface.
template <class R>
concept ByteSource = requires(R& r, std::span<std::uint8_t> out) {
  { r.fill(out) } -> std::same_as<void>;
};

// Counter-mode stream: block i = SHA-256("tbsig/rng" || seed || stream || i).
// Given (seed, stream) the output is fixed, and distinct streams are
// independent, so Monte Carlo trials can be keyed by trial index.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  void fill(std::span<std::uint8_t> out) {
    for (auto& b : out) {
      if (used_ == block_.size()) refill();
      b = block_[used_++];
    }
  }

  std::uint8_t next_byte() {
    if (used_ == block_.size()) refill();
    return block_[used_++];
  }

  std::uint64_t next_u64() {
    std::uint8_t buf[8];
    fill(buf);
    return read_u64_be(buf);
  }

  // Uniform in [0, bound) by rejection; bound must be positive.
  std::uint64_t uniform(std::uint64_t bound) {
    if (bound == 0) throw Error(Errc::kInvalidInput, "uniform(0)");
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    for (;;) {
      std::uint64_t v = next_u64();
      if (v < limit) return v % bound;
    }
  }

  // Uniform double in [0, 1) with 53 bits of precision.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Independent child stream derived from this generator's key.
  CounterRng derive(std::uint64_t substream) const {
    Bytes key = to_bytes("tbsig/rng/derive");
    append_u64_be(key, seed_);
    append_u64_be(key, stream_);
    append_u64_be(key, substream);
    Digest d = sha256(key);
    return CounterRng(read_u64_be(d), read_u64_be(std::span(d).subspan(8)));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  void refill() {
    Bytes input = to_bytes("tbsig/rng");
    append_u64_be(input, seed_);
    append_u64_be(input, stream_);
    append_u64_be(input, counter_++);
    block_ = sha256(input);
    used_ = 0;
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  Digest block_{};
  std::size_t used_ = block_.size();
};

// Operating-system entropy; used only when no seed is supplied.
class OsRng {
 public:
  void fill(std::span<std::uint8_t> out) {
    if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
      throw Error(Errc::kInvalidInput, "RAND_bytes failed");
    }
  }
};

static_assert(ByteSource<CounterRng>);
static_assert(ByteSource<OsRng>);

}  // namespace tbsig

#endif  // TBSIG_RNG_HPP_
