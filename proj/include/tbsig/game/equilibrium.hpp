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

#ifndef TBSIG_GAME_EQUILIBRIUM_HPP_
#define TBSIG_GAME_EQUILIBRIUM_HPP_

#include <cmath>
#include <cstddef>
#include <string_view>
#include <vector>

#include "tbsig/game/model.hpp"

namespace tbsig::game {

struct RoundRecord {
  std::size_t round = 0;
  std::vector<double> bids;
  std::vector<bool> included;
  std::vector<double> tips_paid;      // tau_i if included now, else 0
  std::vector<double> mev_collected;  // expected delayed value if withheld
};

enum class EquilibriumStatus { kConverged, kNonConvergence };

constexpr std::string_view to_string(EquilibriumStatus s) {
  return s == EquilibriumStatus::kConverged ? "converged" : "non-convergence";
}

struct EquilibriumResult {
  EquilibriumStatus status = EquilibriumStatus::kNonConvergence;
  std::size_t rounds = 0;
  std::vector<RoundRecord> trajectory;
  std::vector<double> tips;  // last round's bids
  std::vector<bool> included;
  bool converged() const { return status == EquilibriumStatus::kConverged; }
};

// Bidder i's best tip on the grid {h, 2h, ..., v_i}, anticipating the
// producer's response to each candidate. Ties go to the smaller tip.
inline double best_bid(const GameConfig& cfg, std::size_t i, double step) {
  const double v = net_value(cfg, i);
  const auto steps = static_cast<std::size_t>(std::floor(v / step + 1e-9));
  double best_tip = step, best_u = -INFINITY;
  for (std::size_t k = 1; k <= std::max<std::size_t>(steps, 1); ++k) {
    const double tip = static_cast<double>(k) * step;
    const double u = bidder_utility(cfg, i, tip, include_is_best(cfg, i, tip));
    if (u > best_u) {
      best_u = u;
      best_tip = tip;
    }
  }
  return best_tip;
}

// Synchronous best-response dynamics. Bids start at each bidder's full
// valuation; every round all bidders re-optimize against the producer's
// best response, which the producer then plays. Stops when no bid moves.
inline EquilibriumResult equilibrium_sim(const GameConfig& cfg, std::size_t max_rounds = 50,
                                         double step = 1e-3) {
  if (cfg.bidders.size() > cfg.target_size) {
    throw Error(Errc::kInvalidInput, "steady state holds at most s* bidders");
  }
  if (!(step > 0)) throw Error(Errc::kInvalidInput, "grid step must be positive");
  const std::size_t n = cfg.bidders.size();
  EquilibriumResult res;
  std::vector<double> bids(n);
  for (std::size_t i = 0; i < n; ++i) {
    bids[i] = std::max(step, std::floor(net_value(cfg, i) / step + 1e-9) * step);
  }
  auto record = [&](std::size_t round) {
    const auto br = producer_best_response(cfg, bids);
    RoundRecord r{round, bids, br.x, std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
      r.tips_paid[i] = br.x[i] ? bids[i] : 0.0;
      r.mev_collected[i] = br.x[i] ? 0.0 : delayed_value(cfg, i, bids[i]);
    }
    res.trajectory.push_back(r);
  };
  record(0);
  for (std::size_t round = 1; round <= max_rounds; ++round) {
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = best_bid(cfg, i, step);
    const bool stable = next == bids;
    bids = next;
    record(round);
    res.rounds = round;
    if (stable) {
      res.status = EquilibriumStatus::kConverged;
      break;
    }
  }
  res.tips = bids;
  res.included = res.trajectory.back().included;
  return res;
}

}  // namespace tbsig::game

#endif  // TBSIG_GAME_EQUILIBRIUM_HPP_
