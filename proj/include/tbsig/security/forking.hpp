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

#ifndef TBSIG_SECURITY_FORKING_HPP_
#define TBSIG_SECURITY_FORKING_HPP_

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "tbsig/security/game.hpp"

namespace tbsig::security {

enum class ForkStatus { kSuccess, kNoForgery, kSecondRunFailed, kDifferentCommitment, kEqualChallenges };

constexpr std::string_view to_string(ForkStatus s) {
  switch (s) {
    case ForkStatus::kSuccess: return "success";
    case ForkStatus::kNoForgery: return "no-forgery";
    case ForkStatus::kSecondRunFailed: return "second-run-failed";
    case ForkStatus::kDifferentCommitment: return "different-commitment";
    case ForkStatus::kEqualChallenges: return "equal-challenges";
  }
  return "?";
}

struct ForkOptions {
  bool force_distinct = false;  // test hook: fresh reply at j differs from h_j
  SignerMode signer = SignerMode::kSimulated;
  BlockHeight verify_height = 0;
};

template <PrimeOrderGroup G>
struct ForkResult {
  ForkStatus status = ForkStatus::kNoForgery;
  std::size_t slots = 0;  // q = q_H + q_S + 1
  std::size_t j = 0;      // rewinding point, 1-based; 0 if the first run failed
  RunResult<G> first;
  std::optional<RunResult<G>> second;
  bool success() const { return status == ForkStatus::kSuccess; }
};

// Runs the adversary once; on a forgery draws j uniformly from {1..q} and
// reruns it on the same tape against an oracle that gives a fresh reply at
// slot j and replays every other slot of the first run. Succeeds when both
// runs forge on the same commitment with different challenges. All
// randomness (replies, signer, j) derives from `seed`.
template <PrimeOrderGroup G>
ForkResult<G> fork(const G& grp, const KeyPair<G>& kp, const AdversaryConfig& cfg,
                   std::uint64_t seed, const ForkOptions& opt = {}) {
  const CounterRng root(seed);
  const Adversary<G> adversary = make_adversary<G>(cfg.strategy);
  ForkResult<G> res;
  res.slots = cfg.max_hash_queries + cfg.max_sign_queries + 1;

  ProgrammableOracle<G> first_oracle(grp, root.derive(1));
  res.first = run_eufcma(grp, kp, cfg, adversary, opt.signer, first_oracle, root.derive(3),
                         opt.verify_height);
  if (!res.first.forged()) return res;

  CounterRng index_rng = root.derive(4);
  res.j = 1 + index_rng.uniform(res.slots);
  const auto h = first_oracle.replies();
  std::vector<std::optional<typename G::Scalar>> script(h.begin(), h.end());
  if (res.j <= script.size()) script[res.j - 1].reset();
  ProgrammableOracle<G> second_oracle(grp, root.derive(2), std::move(script));
  if (opt.force_distinct && res.j <= h.size()) second_oracle.avoid_at(res.j, h[res.j - 1]);
  res.second = run_eufcma(grp, kp, cfg, adversary, opt.signer, second_oracle, root.derive(3),
                          opt.verify_height);

  if (!res.second->forged()) {
    res.status = ForkStatus::kSecondRunFailed;
  } else if (!(res.first.transcript->commitment == res.second->transcript->commitment) ||
             res.first.transcript->expiry != res.second->transcript->expiry) {
    res.status = ForkStatus::kDifferentCommitment;
  } else if (res.first.transcript->challenge == res.second->transcript->challenge) {
    res.status = ForkStatus::kEqualChallenges;
  } else {
    res.status = ForkStatus::kSuccess;
  }
  return res;
}

template <PrimeOrderGroup G>
bool is_accepting(const G& grp, const typename G::Element& public_key, const Transcript<G>& t) {
  return grp.mul_exp2(t.response, public_key, grp.scalar_neg(t.challenge)) == t.commitment;
}

// From g^z1 = R Y^c1 and g^z2 = R Y^c2: s = (z1 - z2) / (c1 - c2).
template <PrimeOrderGroup G>
typename G::Scalar extract_dlog(const G& grp, const Transcript<G>& t1, const Transcript<G>& t2,
                                const typename G::Element& public_key) {
  if (!is_accepting(grp, public_key, t1) || !is_accepting(grp, public_key, t2)) {
    throw Error(Errc::kNotAccepting, "transcript does not satisfy g^z = R Y^c");
  }
  if (!(t1.commitment == t2.commitment)) {
    throw Error(Errc::kInvalidInput, "transcripts have different commitments");
  }
  if (t1.challenge == t2.challenge) throw Error(Errc::kEqualChallenges, "c1 == c2");
  const auto s = grp.scalar_mul(grp.scalar_sub(t1.response, t2.response),
                                grp.scalar_invert(grp.scalar_sub(t1.challenge, t2.challenge)));
  if (!(grp.exp(grp.generator(), s) == public_key)) {
    throw Error(Errc::kExtractionMismatch, "g^s != Y");
  }
  return s;
}

}  // namespace tbsig::security

#endif  // TBSIG_SECURITY_FORKING_HPP_
