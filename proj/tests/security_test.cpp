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

#include <gtest/gtest.h>

#include "tbsig/group/secp256k1.hpp"
#include "tbsig/group/toy_schnorr.hpp"
#include "tbsig/security/experiments.hpp"
#include "tbsig/security/forking.hpp"
#include "tbsig/security/game.hpp"
#include "tbsig/security/oracle.hpp"
#include "tbsig/security/stats.hpp"

namespace tbsig::security {
namespace {

using Toy = ToySchnorrGroup;
using Curve = Secp256k1Group;

TEST(OracleTest, ConsistentAndLogged) {
  Toy grp;
  ProgrammableOracle<Toy> o(grp, CounterRng(1));
  const Bytes a = to_bytes("a"), b = to_bytes("b");
  const auto ha = o.query(a, QuerySource::kAdversary);
  o.query(b, QuerySource::kSigner);
  EXPECT_EQ(o.query(a, QuerySource::kVerifier), ha);
  ASSERT_EQ(o.log().size(), 2u);
  EXPECT_EQ(o.log()[0].slot, 1u);
  EXPECT_EQ(o.log()[1].source, QuerySource::kSigner);
  EXPECT_EQ(*o.slot_of(b), 2u);
  EXPECT_EQ(o.count(QuerySource::kAdversary), 1u);
}

TEST(OracleTest, ProgrammingDefinedPointFails) {
  Toy grp;
  ProgrammableOracle<Toy> o(grp, CounterRng(1));
  const Bytes a = to_bytes("a");
  o.program(a, grp.scalar(4));
  EXPECT_EQ(o.query(a, QuerySource::kAdversary), grp.scalar(4));
  try {
    o.program(a, grp.scalar(5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kProgrammingCollision);
  }
}

TEST(OracleTest, ReplayReproducesEveryReply) {
  Toy grp;
  ProgrammableOracle<Toy> o(grp, CounterRng(2));
  CounterRng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Bytes in = to_bytes("q" + std::to_string(rng.uniform(50)));
    if (i % 7 == 0 && !o.defined(in)) {
      o.program(in, grp.random_scalar(rng));
    } else {
      o.query(in, QuerySource::kAdversary);
    }
  }
  const auto replies = o.replies();
  ProgrammableOracle<Toy> fresh(grp, CounterRng(99),
                                std::vector<std::optional<Toy::Scalar>>(replies.begin(), replies.end()));
  for (const auto& rec : o.log()) {
    EXPECT_EQ(fresh.query(rec.input, QuerySource::kAdversary), rec.reply);
  }
}

TEST(OracleTest, ScriptAndAvoid) {
  Toy grp;
  ProgrammableOracle<Toy> o(grp, CounterRng(4), {grp.scalar(3), std::nullopt});
  o.avoid_at(2, grp.scalar(0));
  EXPECT_EQ(o.query(to_bytes("x"), QuerySource::kAdversary), grp.scalar(3));
  for (int i = 0; i < 1; ++i) {
    EXPECT_NE(o.query(to_bytes("y"), QuerySource::kAdversary), grp.scalar(0));
  }
}

TEST(SimulateSignTest, VerifiesWithoutSecret) {
  Toy grp;
  CounterRng rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto kp = keygen(grp, rng);
    ProgrammableOracle<Toy> o(grp, rng.derive(i));
    const Bytes m = to_bytes("m" + std::to_string(i));
    const BlockHeight te = 1 + rng.uniform(10);
    const auto sig = simulate_sign(grp, o, kp.public_key, m, te, rng);
    OracleHash<Toy> h{&o, QuerySource::kVerifier};
    for (BlockHeight tc = 0; tc <= te + 1; ++tc) {
      EXPECT_EQ(tb_verify_with(grp, h, kp.public_key, m, sig, tc), tc <= te);
    }
  }
}

TEST(SimulateSignTest, FreshRandomnessGivesDistinctSignatures) {
  Curve grp;
  CounterRng rng(6);
  const auto kp = keygen(grp, rng);
  ProgrammableOracle<Curve> o(grp, CounterRng(7));
  const Bytes m = to_bytes("same");
  const auto a = simulate_sign(grp, o, kp.public_key, m, 10, rng);
  const auto b = simulate_sign(grp, o, kp.public_key, m, 10, rng);
  EXPECT_NE(a, b);
  OracleHash<Curve> h{&o, QuerySource::kVerifier};
  EXPECT_TRUE(tb_verify_with(grp, h, kp.public_key, m, a, 0));
  EXPECT_TRUE(tb_verify_with(grp, h, kp.public_key, m, b, 0));
}

TEST(SimulateSignTest, CollisionOnQueriedPoint) {
  Toy grp;
  const auto kp = keypair_from_secret(grp, grp.scalar(7));
  const Bytes m = to_bytes("m");
  CounterRng r1(8), r2(8);
  ProgrammableOracle<Toy> probe(grp, CounterRng(1));
  const auto sig = simulate_sign(grp, probe, kp.public_key, m, 5, r1);
  ProgrammableOracle<Toy> o(grp, CounterRng(1));
  o.query(challenge_preimage(grp, ChallengeInput<Toy>{sig.commitment, kp.public_key, m,
                                                      TimeBoundFields{5, true}}),
          QuerySource::kAdversary);
  try {
    simulate_sign(grp, o, kp.public_key, m, 5, r2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kProgrammingCollision);
  }
}

TEST(SimulateSignTest, MarginalsMatchRealSigner) {
  Toy grp;
  const auto real = signature_marginals(grp, SignerMode::kReal, 10000, 1);
  const auto sim = signature_marginals(grp, SignerMode::kSimulated, 10000, 2);
  EXPECT_EQ(real.verified, 10000u);
  EXPECT_EQ(sim.verified, 10000u);
  EXPECT_EQ(sim.commitment[0], 0u);  // never the identity
  EXPECT_GT(chi_square_homogeneity(real.commitment, sim.commitment).p_value, 0.001);
  EXPECT_GT(chi_square_homogeneity(real.challenge, sim.challenge).p_value, 0.001);
  EXPECT_GT(chi_square_homogeneity(real.response, sim.response).p_value, 0.001);
  EXPECT_GT(chi_square_uniform(sim.challenge).p_value, 0.001);
  std::vector<std::uint64_t> r(sim.commitment.begin() + 1, sim.commitment.end());
  EXPECT_GT(chi_square_uniform(r).p_value, 0.001);
}

TEST(StatsTest, ChiSquareReference) {
  // Counts {10, 20} vs {20, 10}: statistic 6.6667 on 1 dof, p = 0.009823.
  const auto r = chi_square_homogeneity({10, 20}, {20, 10});
  EXPECT_NEAR(r.statistic, 20.0 / 3.0, 1e-9);
  EXPECT_NEAR(r.p_value, 0.0098232, 1e-6);
  EXPECT_NEAR(chi_square_uniform({25, 25, 25, 25}).p_value, 1.0, 1e-12);
}

RunResult<Curve> run_curve(Strategy s, std::uint64_t seed, SignerMode mode) {
  Curve grp;
  CounterRng rng(seed);
  const auto kp = keygen(grp, rng);
  AdversaryConfig cfg{seed, s, 8, 1};
  ProgrammableOracle<Curve> o(grp, rng.derive(1));
  return run_eufcma(grp, kp, cfg, make_adversary<Curve>(s), mode, o, rng.derive(2));
}

TEST(EufcmaTest, SubstitutionAndReplayFailOnCurve) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (auto mode : {SignerMode::kReal, SignerMode::kSimulated}) {
      EXPECT_EQ(run_curve(Strategy::kExpirySubstitution, seed, mode).outcome, Outcome::kRejected);
      EXPECT_EQ(run_curve(Strategy::kReplay, seed, mode).outcome, Outcome::kReplayedPair);
    }
  }
}

TEST(EufcmaTest, RequeryingAPairIsARuleViolation) {
  Toy grp;
  const auto kp = keypair_from_secret(grp, grp.scalar(3));
  ProgrammableOracle<Toy> o(grp, CounterRng(1));
  Adversary<Toy> greedy = [](GameContext<Toy>& ctx) -> std::optional<Forgery<Toy>> {
    ctx.sign(to_bytes("m"), 5);
    ctx.sign(to_bytes("m"), 5);
    return std::nullopt;
  };
  AdversaryConfig cfg{1, Strategy::kReplay, 0, 2};
  try {
    run_eufcma(grp, kp, cfg, greedy, SignerMode::kReal, o, CounterRng(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kRuleViolation);
  }
  Adversary<Toy> chatty = [](GameContext<Toy>& ctx) -> std::optional<Forgery<Toy>> {
    for (int i = 0; i < 3; ++i) ctx.hash(to_bytes(std::to_string(i)));
    return std::nullopt;
  };
  AdversaryConfig small{1, Strategy::kOracleGuessing, 2, 0};
  EXPECT_THROW(run_eufcma(grp, kp, small, chatty, SignerMode::kReal, o, CounterRng(2)), Error);
}

// Against 10^5 tapes the guessing forger lands at 1 - (10/11)^8 = 0.5335.
TEST(EufcmaTest, OracleGuessingMatchesAnalyticRate) {
  Toy grp;
  EufcmaParams p;
  p.adversary = AdversaryConfig{0, Strategy::kOracleGuessing, 8, 0};
  p.trials = 100000;
  p.seed = 11;
  const auto row = eufcma_experiment(grp, p);
  EXPECT_NEAR(row.bound, 1 - std::pow(10.0 / 11.0, 8), 1e-12);
  EXPECT_TRUE(row.pass) << to_csv(row);

  p.adversary.max_hash_queries = 1;
  p.trials = 20000;
  const auto single = eufcma_experiment(grp, p);
  EXPECT_NEAR(single.bound, 1.0 / 11.0, 1e-12);
  EXPECT_TRUE(single.pass) << to_csv(single);
}

// In an 11-element challenge space a re-labelled expiry hits the old
// challenge 1 time in 11, the same as a blind guess; replay never wins.
TEST(EufcmaTest, ToySubstitutionNoBetterThanGuessingAndReplayNever) {
  Toy grp;
  for (auto mode : {SignerMode::kReal, SignerMode::kSimulated}) {
    EufcmaParams p;
    p.adversary = AdversaryConfig{0, Strategy::kExpirySubstitution, 0, 1};
    p.trials = 100000;
    p.seed = 12;
    p.signer = mode;
    const auto sub = eufcma_experiment(grp, p);
    EXPECT_TRUE(sub.pass) << to_csv(sub);
    EXPECT_NEAR(sub.epsilon, 1.0 / 11, 5 * binomial_sigma(1.0 / 11, p.trials));

    p.adversary.strategy = Strategy::kReplay;
    p.trials = 1000000;
    const auto rep = eufcma_trials(grp, p);
    EXPECT_EQ(rep.forged, 0u);
    EXPECT_EQ(rep.replayed, p.trials);
  }
}

TEST(EufcmaTest, SubstitutionZeroOnCurve) {
  Curve grp;
  EufcmaParams p;
  p.adversary = AdversaryConfig{0, Strategy::kExpirySubstitution, 0, 1};
  p.trials = 500;
  p.signer = SignerMode::kSimulated;
  EXPECT_EQ(eufcma_trials(grp, p).forged, 0u);
}

TEST(ForkTest, TranscriptsAreAcceptingAndShareCommitment) {
  Toy grp;
  int successes = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    CounterRng rng(seed);
    const auto kp = keygen(grp, rng);
    AdversaryConfig cfg{rng.next_u64(), Strategy::kHonestForger, 8, 0, 0.5};
    const auto r = fork(grp, kp, cfg, rng.next_u64());
    if (!r.success()) continue;
    ++successes;
    const auto& t1 = *r.first.transcript;
    const auto& t2 = *r.second->transcript;
    EXPECT_TRUE(is_accepting(grp, kp.public_key, t1));
    EXPECT_TRUE(is_accepting(grp, kp.public_key, t2));
    EXPECT_EQ(t1.commitment, t2.commitment);
    EXPECT_EQ(t1.expiry, t2.expiry);
    EXPECT_NE(t1.challenge, t2.challenge);
    EXPECT_EQ(r.j, r.first.forgery_slot);
  }
  EXPECT_GT(successes, 0);
}

TEST(ForkTest, ForcedDistinctNeverYieldsEqualChallenges) {
  Toy grp;
  int at_forgery_slot = 0;
  for (std::uint64_t seed = 0; seed < 3000; ++seed) {
    CounterRng rng(seed);
    const auto kp = keygen(grp, rng);
    AdversaryConfig cfg{rng.next_u64(), Strategy::kHonestForger, 8, 0, 1.0};
    const auto r = fork(grp, kp, cfg, rng.next_u64(), ForkOptions{true});
    if (r.j != r.first.forgery_slot) continue;
    ++at_forgery_slot;
    EXPECT_EQ(r.status, ForkStatus::kSuccess);
  }
  EXPECT_GT(at_forgery_slot, 200);
}

TEST(ForkTest, EmpiricalRateMeetsLemmaBound) {
  Toy grp;
  ForkParams p;
  p.trials = 20000;
  p.seed = 21;
  const auto s = fork_trials(grp, p);
  EXPECT_NEAR(s.epsilon(), 0.5, 5 * binomial_sigma(0.5, p.trials));
  EXPECT_TRUE(s.meets_bound()) << s.rate() << " vs " << s.bound();
  EXPECT_EQ(s.extractions, s.forks);
}

TEST(ExtractTest, WorkedExample) {
  Toy grp;
  const auto y = grp.exp(grp.generator(), grp.scalar(7));
  const auto r = grp.exp(grp.generator(), grp.scalar(3));
  ASSERT_EQ(r.residue, 8u);
  const Transcript<Toy> t1{r, grp.scalar(2), grp.scalar(6), 10};
  const Transcript<Toy> t2{r, grp.scalar(5), grp.scalar(5), 10};
  const auto s = extract_dlog(grp, t1, t2, y);
  EXPECT_EQ(s, grp.scalar(7));
  EXPECT_EQ(grp.dlog_bruteforce(y), s);
}

TEST(ExtractTest, Errors) {
  Toy grp;
  const auto y = grp.exp(grp.generator(), grp.scalar(7));
  const auto r = grp.exp(grp.generator(), grp.scalar(3));
  const Transcript<Toy> t1{r, grp.scalar(2), grp.scalar(6), 10};
  auto expect_code = [&](const Transcript<Toy>& a, const Transcript<Toy>& b, Errc code) {
    try {
      extract_dlog(grp, a, b, y);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), code);
    }
  };
  expect_code(t1, t1, Errc::kEqualChallenges);
  expect_code(t1, Transcript<Toy>{r, grp.scalar(5), grp.scalar(6), 10}, Errc::kNotAccepting);
}

TEST(ExtractTest, HundredRandomKeys) {
  Toy grp;
  ExtractParams p;
  p.seed = 5;
  const auto s = extract_trials(grp, p);
  EXPECT_EQ(s.matched, 100u);
  EXPECT_EQ(s.gave_up, 0u);
}

TEST(ExperimentCsvTest, Format) {
  ExperimentRow r{"replay", 10, 0, 0.0, 0.0, true};
  EXPECT_EQ(csv_header(), "strategy,trials,successes,epsilon,bound,pass");
  EXPECT_EQ(to_csv(r), "replay,10,0,0.000000,0.000000,pass");
}

}  // namespace
}  // namespace tbsig::security
