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

#ifndef TBSIG_CHAIN_SCENARIO_HPP_
#define TBSIG_CHAIN_SCENARIO_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tbsig/chain/chain.hpp"
#include "tbsig/config.hpp"
#include "tbsig/group/secp256k1.hpp"
#include "tbsig/group/toy_schnorr.hpp"

namespace tbsig::chain {

struct ScenarioTx {
  std::string label;
  BlockHeight at_height = 0;  // submitted once the tip reaches this height
  std::optional<BlockHeight> signed_at;  // defaults to at_height
  std::string sender;
  std::string payload;
  std::uint64_t fee_cap = 0;
  std::uint64_t tip = 0;
  std::optional<BlockHeight> expiry;  // absolute t_e; nullopt means vanilla
};

struct ScenarioReorg {
  BlockHeight after_height = 0;  // fires once the tip reaches this height
  std::uint64_t depth = 1;       // canonical blocks replaced
  std::uint64_t length = 2;      // blocks in the competing branch
  std::string producer;
};

struct ScenarioProducer {
  std::string name;
  double stake = 1.0;
};

struct Scenario {
  Backend backend = Backend::kCurve256;
  ChainParams params;
  BlockHeight blocks = 0;  // run until the tip reaches this height
  std::vector<ScenarioProducer> producers;
  std::vector<std::string> senders;
  std::vector<ScenarioTx> transactions;
  std::vector<ScenarioReorg> reorgs;
};

inline Scenario parse_scenario(const nlohmann::json& root) {
  config::Node n(root, "");
  Scenario s;
  const std::string backend = n.string_or("backend", "curve");
  if (backend == "curve") {
    s.backend = Backend::kCurve256;
  } else if (backend == "toy") {
    s.backend = Backend::kToySchnorr;
  } else {
    n.at("backend").fail("expected \"curve\" or \"toy\"");
  }
  s.params.target_size = n.at("target_size").uint();
  s.params.base_fee = n.uint_or("base_fee", 0);
  s.blocks = n.at("blocks").uint();

  const auto producers = n.at("producers");
  for (std::size_t i = 0; i < producers.size(); ++i) {
    const auto p = producers.at(i);
    ScenarioProducer sp{p.at("name").string(), p.number_or("stake", 1.0)};
    if (!(sp.stake > 0)) p.at("stake").fail("must be positive");
    s.producers.push_back(sp);
  }
  if (s.producers.empty()) producers.fail("need at least one producer");

  const auto senders = n.at("senders");
  for (std::size_t i = 0; i < senders.size(); ++i) s.senders.push_back(senders.at(i).string());

  if (n.has("transactions")) {
    const auto txs = n.at("transactions");
    for (std::size_t i = 0; i < txs.size(); ++i) {
      const auto t = txs.at(i);
      ScenarioTx tx;
      tx.label = t.string_or("label", "tx" + std::to_string(i));
      tx.at_height = t.at("at_height").uint();
      if (t.has("signed_at")) tx.signed_at = t.at("signed_at").uint();
      tx.sender = t.at("sender").string();
      bool known = false;
      for (const auto& name : s.senders) known = known || name == tx.sender;
      if (!known) t.at("sender").fail("unknown sender \"" + tx.sender + "\"");
      tx.payload = t.string_or("payload", tx.label);
      tx.fee_cap = t.at("fee_cap").uint();
      tx.tip = t.uint_or("tip", 0);
      const BlockHeight signed_at = tx.signed_at.value_or(tx.at_height);
      if (t.has("expiry_offset") && t.has("expiry")) {
        t.fail("give at most one of expiry_offset and expiry");
      }
      if (t.has("expiry_offset")) {
        const auto off = t.at("expiry_offset").uint();
        if (off == 0) t.at("expiry_offset").fail("must be at least 1");
        tx.expiry = signed_at + off;
      } else if (t.has("expiry")) {
        tx.expiry = t.at("expiry").uint();
        if (*tx.expiry <= signed_at) t.at("expiry").fail("must be above the signing height");
      }
      s.transactions.push_back(tx);
    }
  }
  if (n.has("reorgs")) {
    const auto rs = n.at("reorgs");
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const auto r = rs.at(i);
      ScenarioReorg ro{r.at("after_height").uint(), r.uint_or("depth", 1), r.uint_or("length", 2),
                       r.string_or("producer", "rival")};
      if (ro.depth == 0 || ro.depth > ro.after_height) r.at("depth").fail("out of range");
      if (ro.length == 0) r.at("length").fail("must be positive");
      s.reorgs.push_back(ro);
    }
  }
  return s;
}

struct ScenarioResult {
  std::vector<nlohmann::json> events;
  bool chain_valid = false;
  BlockHeight final_height = 0;
};

namespace detail {

template <PrimeOrderGroup G>
ScenarioResult run_scenario(const G& grp, const Scenario& s, std::uint64_t seed) {
  CounterRng root(seed);
  std::map<std::string, KeyPair<G>> keys;
  for (std::size_t i = 0; i < s.senders.size(); ++i) {
    CounterRng krng = root.derive(i);
    keys.emplace(s.senders[i], keygen(grp, krng));
  }
  CounterRng sign_rng = root.derive(1'000'000);
  CounterRng lottery = root.derive(1'000'001);

  ChainState<G> state(grp, s.params);
  std::map<std::string, std::string> labels;  // tx id hex -> label
  std::vector<bool> submitted(s.transactions.size(), false);
  std::vector<bool> fired(s.reorgs.size(), false);
  double total_stake = 0;
  for (const auto& p : s.producers) total_stake += p.stake;

  auto pick_producer = [&] {
    double u = lottery.uniform01() * total_stake;
    for (const auto& p : s.producers) {
      if (u < p.stake) return p.name;
      u -= p.stake;
    }
    return s.producers.back().name;
  };

  while (state.tip_height() < s.blocks) {
    for (std::size_t i = 0; i < s.transactions.size(); ++i) {
      const auto& t = s.transactions[i];
      if (submitted[i] || t.at_height > state.tip_height()) continue;
      submitted[i] = true;
      const auto& kp = keys.at(t.sender);
      const Bytes payload = to_bytes(t.payload);
      const BlockHeight signed_at = t.signed_at.value_or(t.at_height);
      const auto tx = t.expiry ? make_tb_transaction(grp, kp, payload, t.fee_cap, t.tip,
                                                     signed_at, *t.expiry, sign_rng)
                               : make_vanilla_transaction(grp, kp, payload, t.fee_cap, t.tip,
                                                          signed_at, sign_rng);
      labels[to_hex(tx_id(grp, tx))] = t.label;
      state.admit(tx);
    }
    state.produce_block(pick_producer());
    for (std::size_t i = 0; i < s.reorgs.size(); ++i) {
      const auto& r = s.reorgs[i];
      if (fired[i] || r.after_height != state.tip_height()) continue;
      fired[i] = true;
      BlockId parent = state.canonical_id(state.tip_height() - r.depth);
      BlockHeight h = state.tip_height() - r.depth;
      std::vector<Block<G>> branch;
      for (std::uint64_t k = 0; k < r.length; ++k) {
        Block<G> b{++h, parent, {}, s.params.base_fee, r.producer};
        parent = block_id(grp, b);
        branch.push_back(std::move(b));
      }
      state.apply_reorg(branch);
    }
  }

  ScenarioResult out;
  out.chain_valid = state.check_chain();
  out.final_height = state.tip_height();
  out.events = state.events();
  for (auto& ev : out.events) {
    if (ev.contains("tx")) {
      auto it = labels.find(ev["tx"].get<std::string>());
      if (it != labels.end()) ev["label"] = it->second;
    }
    if (ev.contains("txs")) {
      nlohmann::json ls = nlohmann::json::array();
      for (const auto& id : ev["txs"]) {
        auto it = labels.find(id.get<std::string>());
        ls.push_back(it == labels.end() ? std::string("?") : it->second);
      }
      ev["labels"] = ls;
    }
  }
  return out;
}

}  // namespace detail

// Drives a chain through the scenario. Every random choice (keys, nonces,
// producer lottery) derives from `seed`, so the event log is reproducible.
inline ScenarioResult run_scenario(const Scenario& s, std::uint64_t seed) {
  if (s.backend == Backend::kToySchnorr) return detail::run_scenario(ToySchnorrGroup{}, s, seed);
  return detail::run_scenario(Secp256k1Group{}, s, seed);
}

}  // namespace tbsig::chain

#endif  // TBSIG_CHAIN_SCENARIO_HPP_
