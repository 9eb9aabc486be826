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

#ifndef TBSIG_SIGNATURE_JSON_HPP_
#define TBSIG_SIGNATURE_JSON_HPP_

#include <json.hpp>

#include "tbsig/schnorr.hpp"

namespace tbsig {

// Debug form: {"R": hex, "z": hex, "t_e": decimal}
template <PrimeOrderGroup G>
nlohmann::json signature_to_json(const G& grp, const TimeBoundSignature<G>& sig) {
  return nlohmann::json{{"R", to_hex(grp.serialize(sig.commitment))},
                        {"z", to_hex(grp.scalar_bytes(sig.response))},
                        {"t_e", sig.expiry}};
}

template <PrimeOrderGroup G>
nlohmann::json signature_to_json(const G& grp, const VanillaSignature<G>& sig) {
  return nlohmann::json{{"R", to_hex(grp.serialize(sig.commitment))},
                        {"z", to_hex(grp.scalar_bytes(sig.response))}};
}

}  // namespace tbsig

#endif  // TBSIG_SIGNATURE_JSON_HPP_
