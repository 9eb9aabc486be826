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

#ifndef TBSIG_SECURITY_EXPERIMENTS_HPP_
#define TBSIG_SECURITY_EXPERIMENTS_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>

#include "tbsig/parallel.hpp"
#include "tbsig/security/forking.hpp"
#include "tbsig/security/stats.hpp"

namespace tbsig::security {

// One CSV row: strategy, trials, successes, epsilon, bound, pass.
struct ExperimentRow {
  std::string strategy;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double epsilon = 0;
  double bound = 0;
  bool pass = false;
};

inline std::string csv_header() { return "strategy,trials,successes,epsilon,bound,pass"; }

inline std::string to_csv(const ExperimentRow& r) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << r.strategy << ',' << r.trials << ',' << r.successes << ',' << r.epsilon
     << ',' << r.bound << ',' << (r.pass ? "pass" : "fail");
  return os.str();
}

// 1/q as a double; zero for groups too large to matter.
template <PrimeOrderGroup G>
double inverse_order(const G& grp) {
  if constexpr (EnumerableGroup<G>) {
    return 1.0 / static_cast<double>(grp.order());
  } else {
    (void)grp;
    return 0.0;
  }
}

struct TrialSeeds {
  CounterRng key;
  std::uint64_t tape;
  std::uint64_t run;
};

// Independent per-trial randomness keyed by (seed, trial index).
inline TrialSeeds trial_seeds(std::uint64_t seed, std::size_t trial) {
  const CounterRng t = CounterRng(seed).derive(trial);
  return TrialSeeds{t.derive(0), t.derive(1).next_u64(), t.derive(2).next_u64()};
}

struct EufcmaParams {
  AdversaryConfig adversary;  // tape is overwritten per trial
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  SignerMode signer = SignerMode::kReal;
  BlockHeight verify_height = 0;
};

struct EufcmaStats {
  std::size_t trials = 0;
  std::size_t forged = 0;
  std::size_t replayed = 0;
  std::size_t rejected = 0;
  std::size_t collisions = 0;
};

template <PrimeOrderGroup G>
EufcmaStats eufcma_trials(const G& grp, const EufcmaParams& p) {
  const auto adversary = make_adversary<G>(p.adversary.strategy);
  auto outcomes = parallel_map<std::pair<Outcome, std::size_t>>(p.trials, [&](std::size_t i) {
    auto seeds = trial_seeds(p.seed, i);
    const auto kp = keygen(grp, seeds.key);
    AdversaryConfig cfg = p.adversary;
    cfg.tape = seeds.tape;
    const CounterRng run(seeds.run);
    ProgrammableOracle<G> oracle(grp, run.derive(1));
    auto r = run_eufcma(grp, kp, cfg, adversary, p.signer, oracle, run.derive(3), p.verify_height);
    return std::make_pair(r.outcome, r.programming_collisions);
  });
  EufcmaStats s;
  s.trials = p.trials;
  for (const auto& [o, c] : outcomes) {
    s.forged += o == Outcome::kForged;
    s.replayed += o == Outcome::kReplayedPair;
    s.rejected += o == Outcome::kRejected;
    s.collisions += c;
  }
  return s;
}

// Expected forgery rate of each scripted strategy, and the pass rule:
//   oracle-guessing      1 - (1 - 1/q)^q_H, within 5 sigma
//   honest-forger        its coin probability, within 5 sigma
//   expiry-substitution  no better than one blind guess (1/q) + 5 sigma
//   replay               exactly zero
template <PrimeOrderGroup G>
ExperimentRow eufcma_experiment(const G& grp, const EufcmaParams& p) {
  const auto s = eufcma_trials(grp, p);
  ExperimentRow row{std::string(to_string(p.adversary.strategy)), s.trials, s.forged};
  row.epsilon = static_cast<double>(s.forged) / static_cast<double>(s.trials);
  const double inv_q = inverse_order(grp);
  switch (p.adversary.strategy) {
    case Strategy::kOracleGuessing:
      row.bound = 1 - std::pow(1 - inv_q, static_cast<double>(p.adversary.max_hash_queries));
      row.pass = std::abs(row.epsilon - row.bound) <= 5 * binomial_sigma(row.bound, s.trials);
      break;
    case Strategy::kHonestForger:
      row.bound = p.adversary.forge_probability;
      row.pass = std::abs(row.epsilon - row.bound) <= 5 * binomial_sigma(row.bound, s.trials);
      break;
    case Strategy::kExpirySubstitution:
      row.bound = inv_q;
      row.pass = row.epsilon <= row.bound + 5 * binomial_sigma(row.bound, s.trials);
      break;
    case Strategy::kReplay:
      row.bound = 0;
      row.pass = s.forged == 0;
      break;
  }
  return row;
}

struct ForkParams {
  AdversaryConfig adversary{0, Strategy::kHonestForger, 8, 0, 0.5};
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  ForkOptions options;
};

struct ForkStats {
  std::size_t trials = 0;
  std::size_t first_forged = 0;
  std::size_t forks = 0;
  std::size_t extractions = 0;  // successful forks whose extraction matched
  std::size_t slots = 0;
  double epsilon() const { return static_cast<double>(first_forged) / static_cast<double>(trials); }
  double rate() const { return static_cast<double>(forks) / static_cast<double>(trials); }
  double bound() const { return epsilon() * epsilon() / static_cast<double>(slots); }
  double sigma() const { return binomial_sigma(rate(), trials); }
  bool meets_bound() const { return rate() >= bound() - 3 * sigma(); }
};

// Every successful fork is fed to extract_dlog and, on enumerable groups,
// compared with the brute-force logarithm.
template <PrimeOrderGroup G>
ForkStats fork_trials(const G& grp, const ForkParams& p) {
  struct Trial {
    bool forged = false, forked = false, extracted = false;
  };
  auto trials = parallel_map<Trial>(p.trials, [&](std::size_t i) {
    auto seeds = trial_seeds(p.seed, i);
    const auto kp = keygen(grp, seeds.key);
    AdversaryConfig cfg = p.adversary;
    cfg.tape = seeds.tape;
    const auto r = fork(grp, kp, cfg, seeds.run, p.options);
    Trial t{r.first.forged(), r.success(), false};
    if (t.forked) {
      const auto s = extract_dlog(grp, *r.first.transcript, *r.second->transcript, kp.public_key);
      t.extracted = s == kp.secret;
      if constexpr (EnumerableGroup<G>) t.extracted = t.extracted && s == grp.dlog_bruteforce(kp.public_key);
    }
    return t;
  });
  ForkStats s;
  s.trials = p.trials;
  s.slots = p.adversary.max_hash_queries + p.adversary.max_sign_queries + 1;
  for (const auto& t : trials) {
    s.first_forged += t.forged;
    s.forks += t.forked;
    s.extractions += t.extracted;
  }
  return s;
}

template <PrimeOrderGroup G>
ExperimentRow fork_experiment(const G& grp, const ForkParams& p) {
  const auto s = fork_trials(grp, p);
  return ExperimentRow{std::string(to_string(p.adversary.strategy)), s.trials, s.forks,
                       s.epsilon(), s.bound(), s.meets_bound()};
}

struct ExtractParams {
  AdversaryConfig adversary{0, Strategy::kHonestForger, 8, 0, 0.5};
  std::size_t keys = 100;
  std::uint64_t seed = 0;
  std::size_t max_attempts = 100000;  // fork attempts per key
};

struct ExtractStats {
  std::size_t keys = 0;
  std::size_t matched = 0;   // extract_dlog == dlog_bruteforce(Y) == s
  std::size_t gave_up = 0;   // no successful fork within max_attempts
  std::size_t attempts = 0;  // total fork attempts
};

// For each random key, forks until one succeeds and checks the extracted
// logarithm against brute force.
template <EnumerableGroup G>
ExtractStats extract_trials(const G& grp, const ExtractParams& p) {
  struct KeyRun {
    bool matched = false, gave_up = true;
    std::size_t attempts = 0;
  };
  auto runs = parallel_map<KeyRun>(p.keys, [&](std::size_t k) {
    KeyRun out;
    CounterRng key_rng = CounterRng(p.seed).derive(k);
    const auto kp = keygen(grp, key_rng);
    for (std::size_t a = 0; a < p.max_attempts; ++a) {
      ++out.attempts;
      const CounterRng att = key_rng.derive(a + 1);
      AdversaryConfig cfg = p.adversary;
      cfg.tape = att.derive(0).next_u64();
      const auto r = fork(grp, kp, cfg, att.derive(1).next_u64());
      if (!r.success()) continue;
      out.gave_up = false;
      try {
        const auto s =
            extract_dlog(grp, *r.first.transcript, *r.second->transcript, kp.public_key);
        out.matched = s == grp.dlog_bruteforce(kp.public_key) && s == kp.secret;
      } catch (const Error&) {
        out.matched = false;
      }
      break;
    }
    return out;
  });
  ExtractStats s;
  s.keys = p.keys;
  for (const auto& r : runs) {
    s.matched += r.matched;
    s.gave_up += r.gave_up;
    s.attempts += r.attempts;
  }
  return s;
}

template <EnumerableGroup G>
ExperimentRow extract_experiment(const G& grp, const ExtractParams& p) {
  const auto s = extract_trials(grp, p);
  ExperimentRow row{std::string(to_string(p.adversary.strategy)), s.keys, s.matched};
  row.epsilon = static_cast<double>(s.matched) / static_cast<double>(s.keys);
  row.bound = 1.0;
  row.pass = s.matched == s.keys;
  return row;
}

// Marginal counts of (R, c, z) over n signatures on distinct messages, from
// either the real signer (SHA-256 challenges) or the secret-free simulator.
struct SignatureMarginals {
  std::vector<std::uint64_t> commitment, challenge, response;
  std::size_t verified = 0;
  std::size_t samples = 0;
};

template <PrimeOrderGroup G>
std::size_t scalar_index(const G& grp, const typename G::Scalar& x) {
  const auto b = grp.scalar_bytes(x);
  return static_cast<std::size_t>(read_u64_be(ByteView(b).subspan(kScalarSize - 8)));
}

template <EnumerableGroup G>
SignatureMarginals signature_marginals(const G& grp, SignerMode mode, std::size_t n,
                                       std::uint64_t seed) {
  const std::size_t q = grp.order();
  SignatureMarginals m{std::vector<std::uint64_t>(q), std::vector<std::uint64_t>(q),
                       std::vector<std::uint64_t>(q), 0, n};
  CounterRng rng(seed);
  const auto kp = keygen(grp, rng);
  ProgrammableOracle<G> oracle(grp, rng.derive(1));
  for (std::size_t i = 0; i < n; ++i) {
    const Bytes msg = to_bytes("sample-" + std::to_string(i));
    const BlockHeight te = 1 + rng.uniform(16);
    TimeBoundSignature<G> sig;
    typename G::Scalar c;
    bool ok = false;
    if (mode == SignerMode::kReal) {
      sig = tb_sign(grp, kp, msg, 0, te, rng);
      c = compute_challenge(grp, ChallengeInput<G>{sig.commitment, kp.public_key, msg,
                                                   TimeBoundFields{te, true}});
      ok = tb_verify(grp, kp.public_key, msg, sig, 0);
    } else {
      sig = simulate_sign(grp, oracle, kp.public_key, msg, te, rng);
      c = *oracle.value_at(challenge_preimage(
          grp, ChallengeInput<G>{sig.commitment, kp.public_key, msg, TimeBoundFields{te, true}}));
      OracleHash<G> h{&oracle, QuerySource::kVerifier};
      ok = tb_verify_with(grp, h, kp.public_key, msg, sig, 0);
    }
    m.commitment[scalar_index(grp, grp.dlog_bruteforce(sig.commitment))]++;
    m.challenge[scalar_index(grp, c)]++;
    m.response[scalar_index(grp, sig.response)]++;
    m.verified += ok;
  }
  return m;
}

}  // namespace tbsig::security

#endif  // TBSIG_SECURITY_EXPERIMENTS_HPP_
