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

#ifndef TBSIG_GAME_MODEL_HPP_
#define TBSIG_GAME_MODEL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string_view>
#include <vector>

#include "tbsig/bytes.hpp"
#include "tbsig/error.hpp"
#include "tbsig/game/distribution.hpp"

namespace tbsig::game {

// Delta_i(t) = delta (1 - exp(-lambda (t - t_i))) for t > t_i, else 0.
struct MevCurve {
  BlockHeight issue_height = 0;
  double max_mev = 0;  // delta_i, the supremum
  double rate = 1;     // lambda, per block

  double value(double t) const {
    const double dt = t - static_cast<double>(issue_height);
    return dt <= 0 ? 0.0 : max_mev * -std::expm1(-rate * dt);
  }
};

enum class Mempool { kPublic, kPrivate };

constexpr std::string_view to_string(Mempool m) {
  return m == Mempool::kPublic ? "public" : "private";
}

struct Bidder {
  double valuation = 0;  // v-bar_i, per unit of gas
  MevCurve mev;
  BlockHeight expiry_offset = 0;  // t_e - t_i when signing with TB-Sig
};

struct GameConfig {
  double rho = 0;  // producer's relative stake
  double base_fee = 0;
  std::size_t target_size = 1;  // s*
  std::vector<Bidder> bidders;
  InclusionDistribution dist = InclusionDistribution::uniform(0, 10);
  Mempool mempool = Mempool::kPublic;
  bool tb_sig_enabled = false;
  // Blocks after issue at which Delta_i is read; by default its supremum.
  std::optional<double> horizon;
};

inline void check(const GameConfig& cfg, std::size_t i) {
  if (!(cfg.rho >= 0 && cfg.rho <= 1)) throw Error(Errc::kInvalidInput, "rho outside [0, 1]");
  if (i >= cfg.bidders.size()) throw Error(Errc::kInvalidInput, "no such bidder");
}

// v_i = v-bar_i - b_f
inline double net_value(const GameConfig& cfg, std::size_t i) {
  check(cfg, i);
  return cfg.bidders[i].valuation - cfg.base_fee;
}

inline double mev_delta(const GameConfig& cfg, std::size_t i) {
  check(cfg, i);
  const auto& m = cfg.bidders[i].mev;
  if (!cfg.horizon) return m.max_mev;
  return m.value(static_cast<double>(m.issue_height) + *cfg.horizon);
}

// A transaction signed with t_e = t_i cannot be carried into a later block.
inline bool delay_possible(const GameConfig& cfg, std::size_t i) {
  check(cfg, i);
  return !(cfg.tb_sig_enabled && cfg.bidders[i].expiry_offset == 0);
}

// In a public mempool a delayed transaction is only recaptured when this
// producer wins a later slot (probability rho); in a private one it always is.
inline double effective_rho(const GameConfig& cfg) {
  return cfg.mempool == Mempool::kPublic ? cfg.rho : 1.0;
}

// The producer's value of delaying i: F(Delta + tau) (Delta + tau) rho.
inline double delayed_value(const GameConfig& cfg, std::size_t i, double tip) {
  if (!delay_possible(cfg, i)) return 0.0;
  const double x = mev_delta(cfg, i) + tip;
  return cfg.dist.cdf(x) * x * effective_rho(cfg);
}

// u_i = x (v - tau) + (1 - x) F(tau + Delta) (v - tau)
inline double bidder_utility(const GameConfig& cfg, std::size_t i, double tip, bool included) {
  const double v = net_value(cfg, i);
  if (included) return v - tip;
  if (!delay_possible(cfg, i)) return 0.0;
  return cfg.dist.cdf(tip + mev_delta(cfg, i)) * (v - tip);
}

// u_M = sum_i x_i tau_i + (1 - x_i) F(Delta_i + tau_i) (Delta_i + tau_i) rho
inline double producer_utility(const GameConfig& cfg, const std::vector<double>& tips,
                               const std::vector<bool>& x) {
  if (tips.size() != cfg.bidders.size() || x.size() != tips.size()) {
    throw Error(Errc::kInvalidInput, "one tip and one decision per bidder");
  }
  if (static_cast<std::size_t>(std::count(x.begin(), x.end(), true)) > cfg.target_size) {
    throw Error(Errc::kInvalidInput, "more inclusions than s*");
  }
  double u = 0;
  for (std::size_t i = 0; i < tips.size(); ++i) {
    u += x[i] ? tips[i] : delayed_value(cfg, i, tips[i]);
  }
  return u;
}

// Exact indifference resolves to inclusion.
inline bool include_is_best(const GameConfig& cfg, std::size_t i, double tip) {
  return tip >= delayed_value(cfg, i, tip);
}

struct BestResponse {
  std::vector<bool> x;
  double producer_payoff = 0;
};

// Per-transaction comparison of the two branches of u_M. If more than s*
// transactions prefer inclusion, the ones with the largest margin win.
inline BestResponse producer_best_response(const GameConfig& cfg, const std::vector<double>& tips) {
  if (tips.size() != cfg.bidders.size()) throw Error(Errc::kInvalidInput, "one tip per bidder");
  std::vector<std::size_t> want;
  for (std::size_t i = 0; i < tips.size(); ++i) {
    if (include_is_best(cfg, i, tips[i])) want.push_back(i);
  }
  std::stable_sort(want.begin(), want.end(), [&](std::size_t a, std::size_t b) {
    return tips[a] - delayed_value(cfg, a, tips[a]) > tips[b] - delayed_value(cfg, b, tips[b]);
  });
  if (want.size() > cfg.target_size) want.resize(cfg.target_size);
  BestResponse br{std::vector<bool>(tips.size(), false), 0};
  for (auto i : want) br.x[i] = true;
  br.producer_payoff = producer_utility(cfg, tips, br.x);
  return br;
}

// Smallest tip in [0, v_i] at which immediate inclusion is a best response,
// i.e. the first root of g(tau) = tau - rho F(Delta + tau)(Delta + tau).
//
// g is concave while Delta + tau stays inside the support of F (the density
// is non-decreasing) and linear with slope 1 - rho beyond it. So: maximize
// g on the concave piece; if the maximum is non-negative the first root lies
// to its left where g increases, otherwise any root is on the linear piece.
// Both roots are bracketed and bisected to 1e-10.
inline double min_tip_threshold(const GameConfig& cfg, std::size_t i) {
  const double cap = net_value(cfg, i);
  auto g = [&](double t) { return t - delayed_value(cfg, i, t); };
  if (g(0) >= 0) return 0.0;
  if (cap <= 0) throw Error(Errc::kNoThreshold, "no positive tip is affordable");

  auto bisect = [&](double lo, double hi) {  // g(lo) < 0 <= g(hi)
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) >= 0 ? hi : lo) = mid;
    }
    return hi;
  };

  const double kink = std::clamp(cfg.dist.upper() - mev_delta(cfg, i), 0.0, cap);
  if (kink > 0) {
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = 0, hi = kink;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
      const double m1 = hi - kInvPhi * (hi - lo), m2 = lo + kInvPhi * (hi - lo);
      if (g(m1) < g(m2)) {
        lo = m1;
      } else {
        hi = m2;
      }
    }
    double peak = 0.5 * (lo + hi);
    if (g(kink) >= g(peak)) peak = kink;
    if (g(peak) >= 0) return bisect(0, peak);
  }
  if (g(cap) >= 0) return bisect(kink, cap);
  throw Error(Errc::kNoThreshold, "delay dominates for every tip up to the valuation");
}

inline std::optional<double> try_min_tip_threshold(const GameConfig& cfg, std::size_t i) {
  try {
    return min_tip_threshold(cfg, i);
  } catch (const Error& e) {
    if (e.code() != Errc::kNoThreshold) throw;
    return std::nullopt;
  }
}

struct DelayDominance {
  bool sufficient_condition_met = false;
  bool best_response_is_delay = false;
  // The sufficient conditions presume the transaction can still be
  // included later; with a collapsed delay branch they say nothing.
  bool applicable = true;
};

// Public: Delta > tau / (F(tau) rho). Private: Delta > tau and F(Delta) > 1/2.
inline DelayDominance check_delay_dominance(const GameConfig& cfg, std::size_t i, double tip) {
  const double delta = mev_delta(cfg, i);
  DelayDominance d;
  if (cfg.mempool == Mempool::kPublic) {
    const double denom = cfg.dist.cdf(tip) * cfg.rho;
    d.sufficient_condition_met = denom > 0 && delta > tip / denom;
  } else {
    d.sufficient_condition_met = delta > tip && cfg.dist.cdf(delta) > 0.5;
  }
  d.best_response_is_delay = !include_is_best(cfg, i, tip);
  d.applicable = delay_possible(cfg, i);
  return d;
}

}  // namespace tbsig::game

#endif  // TBSIG_GAME_MODEL_HPP_
