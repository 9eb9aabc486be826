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

#ifndef TBSIG_SECURITY_GAME_HPP_
#define TBSIG_SECURITY_GAME_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "tbsig/schnorr.hpp"
#include "tbsig/security/oracle.hpp"

namespace tbsig::security {

// Signing without the secret: pick (c, z), set R = g^z Y^-c and program the
// oracle so that H(R, Y, m, t_e, 1) = c. R = 1 is resampled because real
// signatures never produce it.
template <PrimeOrderGroup G, ByteSource R>
TimeBoundSignature<G> simulate_sign(const G& grp, ProgrammableOracle<G>& oracle,
                                    const typename G::Element& public_key, ByteView message,
                                    BlockHeight expiry, R& rng) {
  typename G::Scalar c, z;
  typename G::Element commitment;
  do {
    c = grp.random_scalar(rng);
    z = grp.random_scalar(rng);
    commitment = grp.mul_exp2(z, public_key, grp.scalar_neg(c));
  } while (grp.is_identity(commitment));
  const ChallengeInput<G> in{commitment, public_key, message, TimeBoundFields{expiry, true}};
  oracle.program(challenge_preimage(grp, in), c);
  return TimeBoundSignature<G>{commitment, z, expiry};
}

enum class SignerMode { kReal, kSimulated };

enum class Strategy { kOracleGuessing, kHonestForger, kExpirySubstitution, kReplay };

constexpr std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kOracleGuessing: return "oracle-guessing";
    case Strategy::kHonestForger: return "honest-forger";
    case Strategy::kExpirySubstitution: return "expiry-substitution";
    case Strategy::kReplay: return "replay";
  }
  return "?";
}

inline std::optional<Strategy> parse_strategy(std::string_view name) {
  for (auto s : {Strategy::kOracleGuessing, Strategy::kHonestForger,
                 Strategy::kExpirySubstitution, Strategy::kReplay}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

struct AdversaryConfig {
  std::uint64_t tape = 0;  // seed of the random tape omega
  Strategy strategy = Strategy::kOracleGuessing;
  std::size_t max_hash_queries = 8;
  std::size_t max_sign_queries = 0;
  double forge_probability = 0.5;  // honest forger only
};

// Accepting transcript (R, c, z, t_e) with g^z = R * Y^c.
template <PrimeOrderGroup G>
struct Transcript {
  typename G::Element commitment;
  typename G::Scalar challenge;
  typename G::Scalar response;
  BlockHeight expiry = 0;
};

template <PrimeOrderGroup G>
struct Forgery {
  Bytes message;
  TimeBoundSignature<G> signature;
};

// The adversary's view of the experiment: the public key, its random tape,
// and the two oracles. Query budgets are enforced here.
template <PrimeOrderGroup G>
class GameContext {
 public:
  using SignFn = std::function<std::optional<TimeBoundSignature<G>>(ByteView, BlockHeight)>;

  GameContext(const G& grp, const typename G::Element& public_key, const AdversaryConfig& cfg,
              ProgrammableOracle<G>& oracle, SignFn signer, BlockHeight verify_height)
      : grp_(grp),
        public_key_(public_key),
        cfg_(cfg),
        tape_(cfg.tape),
        oracle_(oracle),
        signer_(std::move(signer)),
        verify_height_(verify_height) {}

  const G& group() const { return grp_; }
  const typename G::Element& public_key() const { return public_key_; }
  CounterRng& tape() { return tape_; }
  BlockHeight verify_height() const { return verify_height_; }
  const AdversaryConfig& config() const { return cfg_; }

  typename G::Scalar hash(ByteView preimage) {
    if (++hash_queries_ > cfg_.max_hash_queries) {
      throw Error(Errc::kRuleViolation, "hash query budget exceeded");
    }
    return oracle_.query(preimage, QuerySource::kAdversary);
  }

  typename G::Scalar hash(const typename G::Element& commitment, ByteView message,
                          BlockHeight expiry) {
    return hash(challenge_preimage(
        grp_, ChallengeInput<G>{commitment, public_key_, message, TimeBoundFields{expiry, true}}));
  }

  // One query per distinct (m, t_e); nullopt if t_e is not in the future.
  std::optional<TimeBoundSignature<G>> sign(ByteView message, BlockHeight expiry) {
    if (++sign_queries_ > cfg_.max_sign_queries) {
      throw Error(Errc::kRuleViolation, "sign query budget exceeded");
    }
    auto key = std::make_pair(Bytes(message.begin(), message.end()), expiry);
    if (signed_.contains(key)) throw Error(Errc::kRuleViolation, "pair already signed");
    auto sig = signer_(message, expiry);
    if (sig) signed_.insert(std::move(key));
    return sig;
  }

  bool was_signed(ByteView message, BlockHeight expiry) const {
    return signed_.contains(std::make_pair(Bytes(message.begin(), message.end()), expiry));
  }

  std::size_t hash_queries() const { return hash_queries_; }
  std::size_t sign_queries() const { return sign_queries_; }

 private:
  const G& grp_;
  typename G::Element public_key_;
  AdversaryConfig cfg_;
  CounterRng tape_;
  ProgrammableOracle<G>& oracle_;
  SignFn signer_;
  BlockHeight verify_height_;
  std::size_t hash_queries_ = 0;
  std::size_t sign_queries_ = 0;
  std::set<std::pair<Bytes, BlockHeight>> signed_;
};

template <PrimeOrderGroup G>
using Adversary = std::function<std::optional<Forgery<G>>(GameContext<G>&)>;

namespace detail {

inline BlockHeight tape_expiry(CounterRng& tape, BlockHeight verify_height) {
  return verify_height + 1 + tape.uniform(16);
}

template <PrimeOrderGroup G>
typename G::Scalar tape_nonzero(const G& grp, CounterRng& tape) {
  for (;;) {
    auto k = grp.random_scalar(tape);
    if (!grp.is_zero(k)) return k;
  }
}

// Guess c, solve R = g^z Y^-c, and hope the oracle agrees: each attempt
// lands with probability 1/q.
template <PrimeOrderGroup G>
std::optional<Forgery<G>> oracle_guessing(GameContext<G>& ctx) {
  const G& grp = ctx.group();
  auto& tape = ctx.tape();
  for (std::size_t a = 0; a < ctx.config().max_hash_queries; ++a) {
    typename G::Scalar guess, z;
    typename G::Element commitment;
    do {
      guess = grp.random_scalar(tape);
      z = grp.random_scalar(tape);
      commitment = grp.mul_exp2(z, ctx.public_key(), grp.scalar_neg(guess));
    } while (grp.is_identity(commitment));
    const Bytes m = to_bytes("guess-" + std::to_string(a));
    const BlockHeight te = tape_expiry(tape, ctx.verify_height());
    if (ctx.hash(commitment, m, te) == guess) {
      return Forgery<G>{m, TimeBoundSignature<G>{commitment, z, te}};
    }
  }
  return std::nullopt;
}

// Knows the secret (brute-forced; toy groups only) and signs like the real
// signer. Its one challenge query sits at a tape-chosen position among
// decoys, and a tape coin decides whether it outputs the forgery. Since both
// depend only on the tape, a rerun against a rewound oracle repeats them.
template <PrimeOrderGroup G>
std::optional<Forgery<G>> honest_forger(GameContext<G>& ctx) {
  if constexpr (EnumerableGroup<G>) {
    const G& grp = ctx.group();
    auto& tape = ctx.tape();
    const auto s = grp.dlog_bruteforce(ctx.public_key());
    const std::size_t n = std::max<std::size_t>(1, ctx.config().max_hash_queries);
    const bool forge = tape.uniform01() < ctx.config().forge_probability;
    const std::size_t position = tape.uniform(n);
    const auto k = tape_nonzero(grp, tape);
    const auto commitment = grp.exp(grp.generator(), k);
    const Bytes m = to_bytes("forgery");
    const BlockHeight te = tape_expiry(tape, ctx.verify_height());
    typename G::Scalar c{};
    for (std::size_t i = 0; i < n; ++i) {
      if (i == position) {
        c = ctx.hash(commitment, m, te);
      } else {
        const auto decoy = grp.exp(grp.generator(), grp.random_scalar(tape));
        ctx.hash(decoy, to_bytes("decoy-" + std::to_string(i)), te);
      }
    }
    if (!forge) return std::nullopt;
    return Forgery<G>{m, TimeBoundSignature<G>{commitment, tbsig::detail::respond(grp, k, s, c), te}};
  } else {
    (void)ctx;
    throw Error(Errc::kInvalidInput, "honest-forger needs an enumerable group");
  }
}

// Obtains sigma on (m, t_e) and re-labels it as a signature on (m, t_e + 1).
template <PrimeOrderGroup G>
std::optional<Forgery<G>> expiry_substitution(GameContext<G>& ctx) {
  const Bytes m = to_bytes("transfer 10");
  const BlockHeight te = tape_expiry(ctx.tape(), ctx.verify_height());
  auto sig = ctx.sign(m, te);
  if (!sig) return std::nullopt;
  sig->expiry = te + 1;
  return Forgery<G>{m, *sig};
}

template <PrimeOrderGroup G>
std::optional<Forgery<G>> replay(GameContext<G>& ctx) {
  const Bytes m = to_bytes("transfer 10");
  const BlockHeight te = tape_expiry(ctx.tape(), ctx.verify_height());
  auto sig = ctx.sign(m, te);
  if (!sig) return std::nullopt;
  return Forgery<G>{m, *sig};
}

}  // namespace detail

template <PrimeOrderGroup G>
Adversary<G> make_adversary(Strategy s) {
  switch (s) {
    case Strategy::kOracleGuessing: return detail::oracle_guessing<G>;
    case Strategy::kHonestForger: return detail::honest_forger<G>;
    case Strategy::kExpirySubstitution: return detail::expiry_substitution<G>;
    case Strategy::kReplay: return detail::replay<G>;
  }
  throw Error(Errc::kInvalidInput, "unknown strategy");
}

enum class Outcome { kForged, kNoOutput, kReplayedPair, kRejected };

constexpr std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::kForged: return "forged";
    case Outcome::kNoOutput: return "no-output";
    case Outcome::kReplayedPair: return "replayed-pair";
    case Outcome::kRejected: return "rejected";
  }
  return "?";
}

template <PrimeOrderGroup G>
struct RunResult {
  Outcome outcome = Outcome::kNoOutput;
  std::optional<Forgery<G>> forgery;
  std::optional<Transcript<G>> transcript;  // set when forged
  std::size_t forgery_slot = 0;             // oracle slot of H(R*, Y, m*, t_e*, 1)
  std::size_t hash_queries = 0;
  std::size_t sign_queries = 0;
  std::size_t programming_collisions = 0;
  bool forged() const { return outcome == Outcome::kForged; }
};

// One EUF-CMA experiment. The adversary wins if it outputs (m*, t_e*, sigma*)
// with (m*, t_e*) never sent to Sign and tb_verify accepting at
// verify_height. In simulated mode the secret key is never touched.
template <PrimeOrderGroup G>
RunResult<G> run_eufcma(const G& grp, const KeyPair<G>& kp, const AdversaryConfig& cfg,
                        const Adversary<G>& adversary, SignerMode mode,
                        ProgrammableOracle<G>& oracle, CounterRng signer_rng,
                        BlockHeight verify_height = 0) {
  RunResult<G> res;
  auto signer = [&](ByteView m, BlockHeight te) -> std::optional<TimeBoundSignature<G>> {
    if (te <= verify_height) return std::nullopt;
    if (mode == SignerMode::kReal) {
      OracleHash<G> h{&oracle, QuerySource::kSigner};
      return tb_sign_with(grp, h, kp, m, verify_height, te, signer_rng);
    }
    for (;;) {
      try {
        return simulate_sign(grp, oracle, kp.public_key, m, te, signer_rng);
      } catch (const Error& e) {
        if (e.code() != Errc::kProgrammingCollision) throw;
        ++res.programming_collisions;
      }
    }
  };
  GameContext<G> ctx(grp, kp.public_key, cfg, oracle, signer, verify_height);
  res.forgery = adversary(ctx);
  res.hash_queries = ctx.hash_queries();
  res.sign_queries = ctx.sign_queries();
  if (!res.forgery) return res;

  const auto& f = *res.forgery;
  if (ctx.was_signed(f.message, f.signature.expiry)) {
    res.outcome = Outcome::kReplayedPair;
    return res;
  }
  OracleHash<G> vh{&oracle, QuerySource::kVerifier};
  if (!tb_verify_with(grp, vh, kp.public_key, f.message, f.signature, verify_height)) {
    res.outcome = Outcome::kRejected;
    return res;
  }
  const Bytes point = challenge_preimage(
      grp, ChallengeInput<G>{f.signature.commitment, kp.public_key, f.message,
                             TimeBoundFields{f.signature.expiry, true}});
  res.outcome = Outcome::kForged;
  res.forgery_slot = *oracle.slot_of(point);
  res.transcript = Transcript<G>{f.signature.commitment, *oracle.value_at(point),
                                 f.signature.response, f.signature.expiry};
  return res;
}

}  // namespace tbsig::security

#endif  // TBSIG_SECURITY_GAME_HPP_
