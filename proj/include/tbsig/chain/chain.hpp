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

#ifndef TBSIG_CHAIN_CHAIN_HPP_
#define TBSIG_CHAIN_CHAIN_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <json.hpp>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tbsig/chain/transaction.hpp"
#include "tbsig/error.hpp"

namespace tbsig::chain {

using BlockId = Digest;

struct ChainParams {
  std::size_t target_size = 2;  // s*; a block may hold up to 2 s*
  std::uint64_t base_fee = 0;   // held constant
};

template <PrimeOrderGroup G>
struct Block {
  BlockHeight height = 0;
  BlockId parent{};
  std::vector<Transaction<G>> transactions;
  std::uint64_t base_fee = 0;
  std::string producer;
};

template <PrimeOrderGroup G>
BlockId block_id(const G& grp, const Block<G>& b) {
  Bytes in = to_bytes("TBSIG/block/v1");
  append_u64_be(in, b.height);
  append(in, b.parent);
  append_u64_be(in, b.base_fee);
  append_u64_be(in, b.producer.size());
  append(in, to_bytes(b.producer));
  append_u64_be(in, b.transactions.size());
  for (const auto& tx : b.transactions) append(in, tx_id(grp, tx));
  return sha256(in);
}

enum class AdmitResult { kAdmitted, kDuplicate, kExpired, kBadSignature, kFeeCapBelowBase };

constexpr std::string_view to_string(AdmitResult r) {
  switch (r) {
    case AdmitResult::kAdmitted: return "Admitted";
    case AdmitResult::kDuplicate: return "Duplicate";
    case AdmitResult::kExpired: return "Expired";
    case AdmitResult::kBadSignature: return "BadSignature";
    case AdmitResult::kFeeCapBelowBase: return "FeeCapBelowBase";
  }
  return "?";
}

enum class BlockFault { kNone, kOversize, kExpiredTxIncluded, kBadSignature, kFeeCapBelowBase };

constexpr std::string_view to_string(BlockFault f) {
  switch (f) {
    case BlockFault::kNone: return "Valid";
    case BlockFault::kOversize: return "Oversize";
    case BlockFault::kExpiredTxIncluded: return "ExpiredTxIncluded";
    case BlockFault::kBadSignature: return "BadSignature";
    case BlockFault::kFeeCapBelowBase: return "FeeCapBelowBase";
  }
  return "?";
}

struct BlockVerdict {
  BlockFault fault = BlockFault::kNone;
  std::size_t tx_index = 0;  // offending transaction, if any
  bool valid() const { return fault == BlockFault::kNone; }
};

// What an honest validator checks, given only the block: size, and every
// signature re-verified at the block's own height.
template <PrimeOrderGroup G>
BlockVerdict validate_block(const G& grp, const ChainParams& params, const Block<G>& block) {
  if (block.transactions.size() > 2 * params.target_size) return {BlockFault::kOversize, 0};
  for (std::size_t i = 0; i < block.transactions.size(); ++i) {
    const auto& tx = block.transactions[i];
    if (tx.fee_cap < block.base_fee) return {BlockFault::kFeeCapBelowBase, i};
    if (auto te = expiry_of(tx); te && !time_check(block.height, *te)) {
      return {BlockFault::kExpiredTxIncluded, i};
    }
    if (!verify_transaction(grp, tx, block.height)) return {BlockFault::kBadSignature, i};
  }
  return {};
}

// Fee actually earned by the producer per unit of gas.
inline std::uint64_t effective_tip(std::uint64_t tip, std::uint64_t fee_cap,
                                   std::uint64_t base_fee) {
  return fee_cap < base_fee ? 0 : std::min(tip, fee_cap - base_fee);
}

// A producer policy picks and orders transactions from the eligible set.
template <PrimeOrderGroup G>
using ProducerPolicy = std::function<std::vector<Transaction<G>>(
    std::vector<Transaction<G>> eligible, BlockHeight height, const ChainParams& params)>;

// Default policy: highest effective tip first, ties by id, at most s*.
template <PrimeOrderGroup G>
ProducerPolicy<G> greedy_by_tip(const G& grp) {
  return [grp](std::vector<Transaction<G>> eligible, BlockHeight, const ChainParams& params) {
    std::vector<std::pair<std::uint64_t, TxId>> keys;
    std::vector<std::size_t> order(eligible.size());
    for (std::size_t i = 0; i < eligible.size(); ++i) {
      keys.emplace_back(effective_tip(eligible[i].tip, eligible[i].fee_cap, params.base_fee),
                        tx_id(grp, eligible[i]));
      order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (keys[a].first != keys[b].first) return keys[a].first > keys[b].first;
      return keys[a].second < keys[b].second;
    });
    std::vector<Transaction<G>> out;
    for (std::size_t i = 0; i < order.size() && out.size() < params.target_size; ++i) {
      out.push_back(std::move(eligible[order[i]]));
    }
    return out;
  };
}

struct ReorgOutcome {
  bool switched = false;
  BlockHeight ancestor = 0;
  std::vector<BlockId> orphaned;
  std::vector<TxId> requeued;
  std::vector<TxId> requires_resubmission;
};

// Single-node view of the chain: every block ever seen, the canonical branch
// by longest-chain (incumbent wins ties), and an expiry-indexed mempool. All
// state changes are appended to a JSON event log.
template <PrimeOrderGroup G>
class ChainState {
 public:
  ChainState(G grp, ChainParams params) : grp_(std::move(grp)), params_(params) {
    Block<G> genesis;
    genesis.base_fee = params_.base_fee;
    genesis.producer = "genesis";
    const BlockId id = block_id(grp_, genesis);
    blocks_.emplace(id, genesis);
    canonical_.push_back(id);
  }

  const G& group() const { return grp_; }
  const ChainParams& params() const { return params_; }
  BlockHeight tip_height() const { return canonical_.size() - 1; }
  const BlockId& tip_id() const { return canonical_.back(); }
  const BlockId& canonical_id(BlockHeight h) const { return canonical_.at(h); }
  const Block<G>& block(const BlockId& id) const { return blocks_.at(id); }
  const Block<G>& canonical_block(BlockHeight h) const { return block(canonical_.at(h)); }
  std::size_t known_blocks() const { return blocks_.size(); }

  std::size_t mempool_size() const { return mempool_.size(); }
  bool in_mempool(const TxId& id) const { return mempool_.contains(id); }
  std::vector<Transaction<G>> mempool() const {
    std::vector<Transaction<G>> out;
    for (const auto& [id, tx] : mempool_) out.push_back(tx);
    return out;
  }
  // Smallest expiry among pending time-bound transactions.
  std::optional<BlockHeight> earliest_expiry() const {
    if (by_expiry_.empty()) return std::nullopt;
    return by_expiry_.begin()->first;
  }

  bool in_canonical_chain(const TxId& id) const {
    for (const auto& bid : canonical_) {
      for (const auto& tx : block(bid).transactions) {
        if (tx_id(grp_, tx) == id) return true;
      }
    }
    return false;
  }

  const std::vector<nlohmann::json>& events() const { return events_; }

  AdmitResult admit(const Transaction<G>& tx) {
    const TxId id = tx_id(grp_, tx);
    AdmitResult r = check_admission(tx, id);
    if (r == AdmitResult::kAdmitted) insert(id, tx);
    log({{"event", "admit"},
         {"height", tip_height()},
         {"tx", to_hex(id)},
         {"result", to_string(r)}});
    return r;
  }

  // Builds and appends block tip+1. Expired transactions are evicted first,
  // so the policy only ever sees transactions valid at the new height.
  const Block<G>& produce_block(const std::string& producer, const ProducerPolicy<G>& policy) {
    const BlockHeight h = tip_height() + 1;
    evict_expired_before(h, "Expired");
    auto chosen = policy(mempool(), h, params_);
    Block<G> b{h, tip_id(), {}, params_.base_fee, producer};
    for (auto& tx : chosen) {
      const TxId id = tx_id(grp_, tx);
      if (!mempool_.contains(id) || !verify_transaction(grp_, tx, h)) {
        throw Error(Errc::kRuleViolation, "policy selected an ineligible transaction");
      }
      b.transactions.push_back(std::move(tx));
    }
    if (b.transactions.size() > 2 * params_.target_size) {
      throw Error(Errc::kRuleViolation, "policy exceeded block capacity");
    }
    for (const auto& tx : b.transactions) erase(tx_id(grp_, tx));
    const BlockId id = block_id(grp_, b);
    blocks_.emplace(id, b);
    canonical_.push_back(id);
    log_block("block", id, b);
    return blocks_.at(id);
  }

  const Block<G>& produce_block(const std::string& producer) {
    return produce_block(producer, greedy_by_tip(grp_));
  }

  // Switches to `branch` if it extends a canonical ancestor to a strictly
  // greater height. Transactions of orphaned blocks go back to the mempool
  // unless they have expired relative to the new tip.
  ReorgOutcome apply_reorg(const std::vector<Block<G>>& branch) {
    if (branch.empty()) throw Error(Errc::kInvalidInput, "empty branch");
    const auto anc = std::find(canonical_.begin(), canonical_.end(), branch.front().parent);
    if (anc == canonical_.end()) {
      throw Error(Errc::kInvalidInput, "branch does not fork from the canonical chain");
    }
    ReorgOutcome out;
    out.ancestor = static_cast<BlockHeight>(anc - canonical_.begin());
    std::vector<BlockId> ids;
    BlockId parent = branch.front().parent;
    for (std::size_t i = 0; i < branch.size(); ++i) {
      const auto& b = branch[i];
      if (b.height != out.ancestor + 1 + i || b.parent != parent) {
        throw Error(Errc::kInvalidInput, "branch is not a contiguous chain");
      }
      const BlockId id = block_id(grp_, b);
      blocks_.emplace(id, b);
      ids.push_back(id);
      parent = id;
    }
    const BlockHeight old_tip = tip_height();
    const BlockHeight new_tip = out.ancestor + branch.size();
    bool branch_valid = true;
    for (const auto& b : branch) branch_valid = branch_valid && validate_block(grp_, params_, b).valid();
    out.switched = branch_valid && new_tip > old_tip;

    nlohmann::json ev{{"event", "reorg"},   {"height", old_tip},
                      {"ancestor", out.ancestor}, {"branch_tip", new_tip},
                      {"switched", out.switched}};
    if (!out.switched) {
      ev["reason"] = branch_valid ? "NotLonger" : "InvalidBranch";
      log(std::move(ev));
      return out;
    }

    std::set<TxId> in_branch;
    for (const auto& b : branch) {
      for (const auto& tx : b.transactions) in_branch.insert(tx_id(grp_, tx));
    }
    std::vector<Transaction<G>> orphaned_txs;
    for (auto it = canonical_.begin() + out.ancestor + 1; it != canonical_.end(); ++it) {
      out.orphaned.push_back(*it);
      for (const auto& tx : block(*it).transactions) orphaned_txs.push_back(tx);
    }
    canonical_.resize(out.ancestor + 1);
    canonical_.insert(canonical_.end(), ids.begin(), ids.end());

    nlohmann::json orphaned = nlohmann::json::array();
    for (const auto& id : out.orphaned) orphaned.push_back(to_hex(id));
    ev["orphaned"] = orphaned;
    log(std::move(ev));
    for (std::size_t i = 0; i < branch.size(); ++i) log_block("block", ids[i], branch[i]);

    for (const auto& id : in_branch) erase(id);
    for (const auto& tx : orphaned_txs) {
      const TxId id = tx_id(grp_, tx);
      if (in_branch.contains(id)) continue;
      const auto te = expiry_of(tx);
      if (te && *te < new_tip) {
        out.requires_resubmission.push_back(id);
        log({{"event", "evict"},
             {"height", new_tip},
             {"tx", to_hex(id)},
             {"reason", "RequiresResubmission"}});
        continue;
      }
      insert(id, tx);
      out.requeued.push_back(id);
      log({{"event", "requeue"}, {"height", new_tip}, {"tx", to_hex(id)}});
    }
    evict_expired_before(new_tip, "Expired");
    return out;
  }

  // Re-validates the whole canonical branch: linkage, heights, and every
  // block under validate_block.
  bool check_chain() {
    bool ok = true;
    for (BlockHeight h = 1; h < canonical_.size() && ok; ++h) {
      const auto& b = canonical_block(h);
      ok = b.height == h && b.parent == canonical_[h - 1] &&
           validate_block(grp_, params_, b).valid();
    }
    for (const auto& [te, id] : by_expiry_) ok = ok && te >= tip_height();
    log({{"event", "chain_check"}, {"height", tip_height()}, {"valid", ok}});
    return ok;
  }

 private:
  AdmitResult check_admission(const Transaction<G>& tx, const TxId& id) const {
    if (mempool_.contains(id) || in_canonical_chain(id)) return AdmitResult::kDuplicate;
    if (auto te = expiry_of(tx); te && !time_check(tip_height(), *te)) {
      return AdmitResult::kExpired;
    }
    if (tx.fee_cap < params_.base_fee) return AdmitResult::kFeeCapBelowBase;
    if (!verify_transaction(grp_, tx, tip_height())) return AdmitResult::kBadSignature;
    return AdmitResult::kAdmitted;
  }

  void insert(const TxId& id, const Transaction<G>& tx) {
    mempool_.emplace(id, tx);
    if (auto te = expiry_of(tx)) by_expiry_.emplace(*te, id);
  }

  void erase(const TxId& id) {
    auto it = mempool_.find(id);
    if (it == mempool_.end()) return;
    if (auto te = expiry_of(it->second)) {
      auto [lo, hi] = by_expiry_.equal_range(*te);
      for (auto e = lo; e != hi; ++e) {
        if (e->second == id) {
          by_expiry_.erase(e);
          break;
        }
      }
    }
    mempool_.erase(it);
  }

  // Drops every pending transaction with t_e < height.
  void evict_expired_before(BlockHeight height, std::string_view reason) {
    while (!by_expiry_.empty() && by_expiry_.begin()->first < height) {
      const TxId id = by_expiry_.begin()->second;
      erase(id);
      log({{"event", "evict"}, {"height", height}, {"tx", to_hex(id)}, {"reason", reason}});
    }
  }

  void log_block(std::string_view kind, const BlockId& id, const Block<G>& b) {
    nlohmann::json txs = nlohmann::json::array();
    for (const auto& tx : b.transactions) txs.push_back(to_hex(tx_id(grp_, tx)));
    log({{"event", kind},
         {"height", b.height},
         {"id", to_hex(id)},
         {"parent", to_hex(b.parent)},
         {"producer", b.producer},
         {"txs", txs}});
  }

  void log(nlohmann::json ev) { events_.push_back(std::move(ev)); }

  G grp_;
  ChainParams params_;
  std::map<BlockId, Block<G>> blocks_;
  std::vector<BlockId> canonical_;
  std::map<TxId, Transaction<G>> mempool_;
  std::multimap<BlockHeight, TxId> by_expiry_;
  std::vector<nlohmann::json> events_;
};

}  // namespace tbsig::chain

#endif  // TBSIG_CHAIN_CHAIN_HPP_
