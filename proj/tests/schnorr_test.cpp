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

#include "tbsig/schnorr.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

#include "tbsig/group/secp256k1.hpp"
#include "tbsig/group/toy_schnorr.hpp"
#include "tbsig/signature_json.hpp"

namespace tbsig {
namespace {

using Toy = ToySchnorrGroup;
using Curve = Secp256k1Group;

nlohmann::json signature_vectors() {
  std::ifstream in(std::string(TBSIG_TEST_DATA_DIR) + "/vectors/challenge_vectors.json");
  return nlohmann::json::parse(in)["signatures"];
}

std::vector<Bytes> test_messages(int n) {
  std::vector<Bytes> out;
  for (int i = 0; i < n; ++i) out.push_back(to_bytes("msg-" + std::to_string(i)));
  return out;
}

TEST(KeygenTest, ForcedSecret) {
  Toy grp;
  const auto kp = keypair_from_secret(grp, grp.scalar(7));
  EXPECT_EQ(kp.public_key.residue, 13u);
}

TEST(KeygenTest, SeededAndConsistent) {
  Curve grp;
  CounterRng a(42), b(42);
  const auto k1 = keygen(grp, a);
  const auto k2 = keygen(grp, b);
  EXPECT_EQ(k1.secret, k2.secret);
  EXPECT_EQ(k1.public_key, k2.public_key);
  EXPECT_EQ(grp.exp(grp.generator(), k1.secret), k1.public_key);
  EXPECT_FALSE(grp.is_zero(k1.secret));
}

TEST(TimeCheckTest, Cases) {
  EXPECT_TRUE(time_check(5, 10));
  EXPECT_TRUE(time_check(10, 10));
  EXPECT_FALSE(time_check(11, 10));
  static_assert(time_check(0, 0));
}

template <class G>
void check_worked_signature(const G& grp, const nlohmann::json& v) {
  const auto kp = keypair_from_secret(grp, grp.scalar(v["secret"].get<std::uint64_t>()));
  ASSERT_EQ(to_hex(grp.serialize(kp.public_key)), v["Y"].get<std::string>());
  const Bytes m = *from_hex(v["message"].get<std::string>());
  const BlockHeight te = v["t_e"];
  Sha256Challenge hash;
  const auto sig = tb_sign_with_nonce(grp, hash, kp, m, 50, te,
                                      grp.scalar(v["nonce"].get<std::uint64_t>()));
  EXPECT_EQ(to_hex(grp.serialize(sig.commitment)), v["R"].get<std::string>());
  EXPECT_EQ(to_hex(encode_signature(grp, sig)), v["wire"].get<std::string>());
  EXPECT_TRUE(tb_verify(grp, kp.public_key, m, sig, 50));
  EXPECT_TRUE(tb_verify(grp, kp.public_key, m, sig, te));
  EXPECT_FALSE(tb_verify(grp, kp.public_key, m, sig, te + 1));
}

TEST(TbSignTest, WorkedExampleMatchesReference) {
  Toy toy;
  Curve curve;
  for (const auto& v : signature_vectors()) {
    SCOPED_TRACE(v.dump());
    if (v["backend"] == "toy") {
      EXPECT_EQ(v["z"], "7");  // 3 + 7 * 10 mod 11
      check_worked_signature(toy, v);
    } else {
      check_worked_signature(curve, v);
    }
  }
}

TEST(TbSignTest, ExpiryMustBeInFuture) {
  Curve grp;
  CounterRng rng(1);
  const auto kp = keygen(grp, rng);
  const Bytes m = to_bytes("m");
  for (BlockHeight tc : {10ull, 11ull}) {
    try {
      tb_sign(grp, kp, m, tc, 10, rng);
      FAIL() << "expected ExpiryNotInFuture";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::kExpiryNotInFuture);
    }
  }
}

TEST(TbSignTest, DeterministicUnderSeed) {
  Curve grp;
  CounterRng kr(5);
  const auto kp = keygen(grp, kr);
  const Bytes m = to_bytes("pay 1");
  CounterRng a(6), b(6);
  EXPECT_EQ(tb_sign(grp, kp, m, 1, 9, a), tb_sign(grp, kp, m, 1, 9, b));
}

TEST(TbVerifyTest, CurveExpiryAndBinding) {
  Curve grp;
  CounterRng rng(11);
  const auto kp = keygen(grp, rng);
  const Bytes m = to_bytes("bid");
  const auto sig = tb_sign(grp, kp, m, 90, 100, rng);
  EXPECT_TRUE(tb_verify(grp, kp.public_key, m, sig, 0));
  EXPECT_TRUE(tb_verify(grp, kp.public_key, m, sig, 100));
  EXPECT_FALSE(tb_verify(grp, kp.public_key, m, sig, 101));
  // Without the explicit gate the flag alone already breaks the equation.
  Sha256Challenge hash;
  EXPECT_FALSE(tb_equation_holds(grp, hash, kp.public_key, m, sig, 101));

  auto extended = sig;
  extended.expiry += 10;
  for (BlockHeight tc : {0ull, 95ull, 100ull, 105ull, 110ull, 111ull}) {
    EXPECT_FALSE(tb_verify(grp, kp.public_key, m, extended, tc)) << tc;
  }
}

// The worked toy signature hashes to the same scalar under flag 0 and 1, so
// the bare equation still holds after expiry. tb_verify must not.
TEST(TbVerifyTest, ToyGateCatchesFlagCollision) {
  Toy grp;
  const auto kp = keypair_from_secret(grp, grp.scalar(7));
  const Bytes m = to_bytes("a");
  Sha256Challenge hash;
  const auto sig = tb_sign_with_nonce(grp, hash, kp, m, 50, 100, grp.scalar(3));
  EXPECT_TRUE(tb_equation_holds(grp, hash, kp.public_key, m, sig, 101));
  EXPECT_FALSE(tb_verify(grp, kp.public_key, m, sig, 101));
}

TEST(TbVerifyTest, RejectsIdentityCommitment) {
  Toy grp;
  const auto kp = keypair_from_secret(grp, grp.scalar(0));
  // With Y = 1 the equation reduces to g^z == R, so (1, 0) would satisfy it.
  TimeBoundSignature<Toy> sig{grp.identity(), grp.scalar(0), 10};
  Sha256Challenge hash;
  EXPECT_TRUE(tb_equation_holds(grp, hash, kp.public_key, to_bytes("x"), sig, 1));
  EXPECT_FALSE(tb_verify(grp, kp.public_key, to_bytes("x"), sig, 1));
}

TEST(TbSigPropertyTest, ToyCompletenessAndExpiryExhaustive) {
  Toy grp;
  const auto messages = test_messages(20);
  CounterRng rng(99);
  for (std::uint64_t s = 0; s < grp.order(); ++s) {
    const auto kp = keypair_from_secret(grp, grp.scalar(s));
    for (const auto& m : messages) {
      for (BlockHeight te = 1; te <= 5; ++te) {
        for (BlockHeight tc = 0; tc < te; ++tc) {
          const auto sig = tb_sign(grp, kp, m, tc, te, rng);
          for (BlockHeight tv = 0; tv <= 5; ++tv) {
            ASSERT_EQ(tb_verify(grp, kp.public_key, m, sig, tv), tv <= te)
                << "s=" << s << " te=" << te << " tv=" << tv;
          }
        }
      }
    }
  }
}

TEST(TbSigPropertyTest, ToyResponseTamperAlwaysRejected) {
  Toy grp;
  CounterRng rng(12);
  for (std::uint64_t s = 0; s < grp.order(); ++s) {
    const auto kp = keypair_from_secret(grp, grp.scalar(s));
    for (const auto& m : test_messages(20)) {
      const auto sig = tb_sign(grp, kp, m, 0, 5, rng);
      for (std::uint64_t z = 0; z < grp.order(); ++z) {
        if (z == sig.response.value) continue;
        auto bad = sig;
        bad.response = grp.scalar(z);
        EXPECT_FALSE(tb_verify(grp, kp.public_key, m, bad, 0));
      }
    }
  }
}

// Changing t_e, m or R moves the challenge to a fresh point of an 11-element
// field. A mutation verifies exactly when the new challenge equals the one
// the unchanged (R, z, Y) already satisfy, so the acceptance rate is ~1/11.
TEST(TbSigPropertyTest, ToyHashBoundTamperAcceptsOnlyOnChallengeCollision) {
  Toy grp;
  CounterRng rng(13);
  int trials = 0, accepted = 0;
  for (std::uint64_t s = 1; s < grp.order(); ++s) {
    const auto kp = keypair_from_secret(grp, grp.scalar(s));
    for (const auto& m : test_messages(20)) {
      const auto sig = tb_sign(grp, kp, m, 0, 5, rng);
      const auto c = compute_challenge(
          grp, ChallengeInput<Toy>{sig.commitment, kp.public_key, m, TimeBoundFields{5, true}});
      for (BlockHeight te = 1; te <= 40; ++te) {
        if (te == sig.expiry) continue;
        auto bad = sig;
        bad.expiry = te;
        const auto c2 = compute_challenge(
            grp, ChallengeInput<Toy>{sig.commitment, kp.public_key, m, TimeBoundFields{te, true}});
        const bool ok = tb_verify(grp, kp.public_key, m, bad, 0);
        ASSERT_EQ(ok, c2 == c);
        ++trials;
        accepted += ok ? 1 : 0;
      }
    }
  }
  const double rate = static_cast<double>(accepted) / trials;
  const double sigma = std::sqrt((1.0 / 11) * (10.0 / 11) / trials);
  EXPECT_NEAR(rate, 1.0 / 11, 5 * sigma);
}

TEST(TbSigPropertyTest, CurveRandomTamperRejected) {
  Curve grp;
  CounterRng rng(14);
  const auto kp = keygen(grp, rng);
  const auto other = keygen(grp, rng);
  for (int i = 0; i < 50; ++i) {
    const Bytes m = to_bytes("tx-" + std::to_string(i));
    const auto sig = tb_sign(grp, kp, m, 10, 20, rng);
    ASSERT_TRUE(tb_verify(grp, kp.public_key, m, sig, 15));
    auto bad_r = sig;
    bad_r.commitment = grp.mul(sig.commitment, grp.generator());
    auto bad_z = sig;
    bad_z.response = grp.scalar_add(sig.response, grp.scalar(1));
    auto bad_te = sig;
    bad_te.expiry = 21 + static_cast<BlockHeight>(rng.uniform(1000));
    Bytes bad_m = m;
    bad_m[rng.uniform(bad_m.size())] ^= static_cast<std::uint8_t>(1u << rng.uniform(8));
    EXPECT_FALSE(tb_verify(grp, kp.public_key, m, bad_r, 15));
    EXPECT_FALSE(tb_verify(grp, kp.public_key, m, bad_z, 15));
    EXPECT_FALSE(tb_verify(grp, kp.public_key, m, bad_te, 15));
    EXPECT_FALSE(tb_verify(grp, kp.public_key, bad_m, sig, 15));
    EXPECT_FALSE(tb_verify(grp, other.public_key, m, sig, 15));
  }
}

TEST(WireFormatTest, SizesAndRoundtrip) {
  Curve grp;
  CounterRng rng(15);
  const auto kp = keygen(grp, rng);
  const Bytes m = to_bytes("x");
  const auto tb = tb_sign(grp, kp, m, 0, 7, rng);
  const auto vanilla = schnorr_sign(grp, kp, m, rng);
  const auto tb_wire = encode_signature(grp, tb);
  const auto v_wire = encode_signature(grp, vanilla);
  EXPECT_EQ(tb_wire.size(), 73u);
  EXPECT_EQ(tb_wire.size(), v_wire.size() + 8);
  EXPECT_EQ(decode_tb_signature(grp, tb_wire), tb);
  EXPECT_EQ(decode_vanilla_signature(grp, v_wire), vanilla);
  EXPECT_FALSE(decode_tb_signature(grp, v_wire).has_value());
  EXPECT_FALSE(decode_vanilla_signature(grp, tb_wire).has_value());

  Bytes big_z = tb_wire;
  std::fill(big_z.begin() + 33, big_z.begin() + 65, 0xff);
  EXPECT_FALSE(decode_tb_signature(grp, big_z).has_value());
  Bytes bad_r = tb_wire;
  bad_r[0] = 0x07;
  EXPECT_FALSE(decode_tb_signature(grp, bad_r).has_value());

  Toy toy;
  EXPECT_EQ(kTimeBoundSignatureSize<Toy>, kVanillaSignatureSize<Toy> + 8);
  EXPECT_EQ(kTimeBoundSignatureSize<Toy>, 48u);
}

TEST(WireFormatTest, JsonDebugForm) {
  Toy grp;
  const auto kp = keypair_from_secret(grp, grp.scalar(7));
  Sha256Challenge hash;
  const auto sig = tb_sign_with_nonce(grp, hash, kp, to_bytes("a"), 50, 100, grp.scalar(3));
  const auto j = signature_to_json(grp, sig);
  EXPECT_EQ(j["R"], "0000000000000008");
  EXPECT_EQ(j["z"], std::string(62, '0') + "07");
  EXPECT_EQ(j["t_e"], 100);
}

TEST(SchnorrTest, RoundtripHundredMessages) {
  Curve grp;
  CounterRng rng(16);
  const auto kp = keygen(grp, rng);
  for (int i = 0; i < 100; ++i) {
    Bytes m(1 + rng.uniform(64));
    rng.fill(m);
    const auto sig = schnorr_sign(grp, kp, m, rng);
    ASSERT_TRUE(schnorr_verify(grp, kp.public_key, m, sig));
    m[0] ^= 0x01;
    EXPECT_FALSE(schnorr_verify(grp, kp.public_key, m, sig));
  }
}

// A vanilla signature does not commit to any expiry: whatever height is
// claimed next to it, the producer can swap in a later one and (R, z) still
// verifies. Re-labelling a TB-Sig the same way fails.
TEST(SchnorrTest, VanillaExpiryClaimIsUnenforceable) {
  Curve grp;
  CounterRng rng(17);
  const auto kp = keygen(grp, rng);
  const Bytes m = to_bytes("swap 5 ETH");
  const BlockHeight claimed = 10, current = 50;

  const auto vanilla = schnorr_sign(grp, kp, m, rng);
  struct Claimed {
    VanillaSignature<Curve> sig;
    BlockHeight expiry;
  } relabelled{vanilla, current + 1};
  EXPECT_GT(relabelled.expiry, claimed);
  EXPECT_TRUE(schnorr_verify(grp, kp.public_key, m, relabelled.sig));

  auto tb = tb_sign(grp, kp, m, 5, claimed, rng);
  tb.expiry = current + 1;
  EXPECT_FALSE(tb_verify(grp, kp.public_key, m, tb, current));
  // Domain separation: a vanilla (R, z) is not a TB-Sig for any expiry.
  for (BlockHeight te : {current, current + 1, current + 100}) {
    EXPECT_FALSE(tb_verify(grp, kp.public_key, m,
                           TimeBoundSignature<Curve>{vanilla.commitment, vanilla.response, te},
                           current));
  }
}

}  // namespace
}  // namespace tbsig
