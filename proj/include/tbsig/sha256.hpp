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

#ifndef TBSIG_SHA256_HPP_
#define TBSIG_SHA256_HPP_

#include <openssl/evp.h>

#include <array>
#include <cstdint>

#include "tbsig/bytes.hpp"
#include "tbsig/error.hpp"

namespace tbsig {

using Digest = std::array<std::uint8_t, 32>;

inline Digest sha256(ByteView data) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(),
                 nullptr) != 1 ||
      len != out.size()) {
    throw Error(Errc::kInvalidInput, "SHA-256 digest failed");
  }
  return out;
}

}  // namespace tbsig

#endif  // TBSIG_SHA256_HPP_
