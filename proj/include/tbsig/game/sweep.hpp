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

#ifndef TBSIG_GAME_SWEEP_HPP_
#define TBSIG_GAME_SWEEP_HPP_

#include <cmath>
#include <cstddef>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tbsig/config.hpp"
#include "tbsig/game/equilibrium.hpp"
#include "tbsig/game/model.hpp"
#include "tbsig/parallel.hpp"

namespace tbsig::game {

enum class RunMode { kThreshold, kSweep, kEquilibrium };

// Parsed game config file; each axis is a list of values and the run
// covers their Cartesian product.
struct SweepSpec {
  RunMode mode = RunMode::kThreshold;
  std::vector<double> rho, delta, lambda;
  std::vector<InclusionDistribution> families;
  std::vector<Mempool> mempools{Mempool::kPublic};
  std::vector<bool> tb_sig{false};
  std::vector<double> valuations{10};
  double base_fee = 0;
  std::size_t target_size = 0;  // 0: number of bidders
  BlockHeight expiry_offset = 0;
  std::optional<double> horizon;
  double grid_step = 1e-3;   // bidder tip grid
  double check_step = 1e-4;  // producer flip-point grid (sweep mode)
  std::size_t rounds = 50;
};

struct Cell {
  double rho, delta, lambda;
  InclusionDistribution family;
  Mempool mempool;
  bool tb_sig;
};

namespace detail {

inline std::vector<double> parse_axis(const config::Node& n) {
  const auto& j = n.json();
  if (j.is_number()) return {n.number()};
  std::vector<double> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < n.size(); ++i) out.push_back(n.at(i).number());
  } else if (j.is_object()) {
    const double from = n.at("from").number(), to = n.at("to").number(),
                 step = n.at("step").number();
    if (!(step > 0) || to < from) n.fail("need step > 0 and to >= from");
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < count; ++k) {
      // Rounded to 12 places so 0.05 * 3 prints as 0.15.
      out.push_back(std::round((from + static_cast<double>(k) * step) * 1e12) / 1e12);
    }
  } else {
    n.fail("expected number, array, or {from, to, step}");
  }
  if (out.empty()) n.fail("empty axis");
  return out;
}

inline InclusionDistribution parse_family(const config::Node& n) {
  const std::string f = n.at("family").string();
  const double a = n.number_or("a", 0), b = n.number_or("b", 10);
  try {
    if (f == "uniform") return InclusionDistribution::uniform(a, b);
    if (f == "linear") return InclusionDistribution::truncated_linear(a, b, n.number_or("slope", 1));
  } catch (const Error& e) {
    n.fail(e.what());
  }
  n.at("family").fail("expected \"uniform\" or \"linear\"");
}

}  // namespace detail

inline SweepSpec parse_sweep(const nlohmann::json& root) {
  config::Node n(root, "");
  SweepSpec s;
  const std::string mode = n.string_or("mode", "threshold");
  if (mode == "threshold") {
    s.mode = RunMode::kThreshold;
  } else if (mode == "sweep") {
    s.mode = RunMode::kSweep;
  } else if (mode == "equilibrium") {
    s.mode = RunMode::kEquilibrium;
  } else {
    n.at("mode").fail("expected threshold, sweep or equilibrium");
  }
  s.rho = detail::parse_axis(n.at("rho"));
  for (double r : s.rho) {
    if (r < 0 || r > 1) n.at("rho").fail("values must lie in [0, 1]");
  }
  s.delta = detail::parse_axis(n.at("delta"));
  for (double d : s.delta) {
    if (d < 0) n.at("delta").fail("values must be non-negative");
  }
  s.lambda = n.has("lambda") ? detail::parse_axis(n.at("lambda")) : std::vector<double>{1.0};
  const auto fams = n.at("families");
  for (std::size_t i = 0; i < fams.size(); ++i) s.families.push_back(detail::parse_family(fams.at(i)));
  if (s.families.empty()) fams.fail("need at least one family");
  if (n.has("mempool")) {
    s.mempools.clear();
    const auto m = n.at("mempool");
    auto one = [&](const config::Node& x) {
      const auto v = x.string();
      if (v == "public") {
        s.mempools.push_back(Mempool::kPublic);
      } else if (v == "private") {
        s.mempools.push_back(Mempool::kPrivate);
      } else {
        x.fail("expected \"public\" or \"private\"");
      }
    };
    if (m.json().is_array()) {
      for (std::size_t i = 0; i < m.size(); ++i) one(m.at(i));
    } else {
      one(m);
    }
  }
  if (n.has("tb_sig")) {
    s.tb_sig.clear();
    const auto t = n.at("tb_sig");
    if (t.json().is_array()) {
      for (std::size_t i = 0; i < t.size(); ++i) s.tb_sig.push_back(t.at(i).boolean());
    } else {
      s.tb_sig.push_back(t.boolean());
    }
  }
  if (n.has("valuations")) s.valuations = detail::parse_axis(n.at("valuations"));
  s.base_fee = n.number_or("base_fee", 0);
  for (double v : s.valuations) {
    if (v < s.base_fee) n.at("valuations").fail("valuations must be at least base_fee");
  }
  s.target_size = n.uint_or("target_size", s.valuations.size());
  s.expiry_offset = n.uint_or("expiry_offset", 0);
  if (n.has("horizon")) s.horizon = n.at("horizon").number();
  s.grid_step = n.number_or("grid_step", 1e-3);
  s.check_step = n.number_or("check_step", 1e-4);
  if (!(s.grid_step > 0)) n.at("grid_step").fail("must be positive");
  if (!(s.check_step > 0)) n.at("check_step").fail("must be positive");
  s.rounds = n.uint_or("rounds", 50);
  return s;
}

inline std::vector<Cell> cells(const SweepSpec& s) {
  std::vector<Cell> out;
  for (const auto& f : s.families)
    for (auto m : s.mempools)
      for (bool tb : s.tb_sig)
        for (double r : s.rho)
          for (double d : s.delta)
            for (double l : s.lambda) out.push_back(Cell{r, d, l, f, m, tb});
  return out;
}

inline GameConfig make_config(const SweepSpec& s, const Cell& c) {
  GameConfig cfg;
  cfg.rho = c.rho;
  cfg.base_fee = s.base_fee;
  cfg.target_size = s.target_size;
  cfg.dist = c.family;
  cfg.mempool = c.mempool;
  cfg.tb_sig_enabled = c.tb_sig;
  cfg.horizon = s.horizon;
  for (double v : s.valuations) cfg.bidders.push_back(Bidder{v, MevCurve{0, c.delta, c.lambda}, s.expiry_offset});
  return cfg;
}

// Smallest tip on a grid where including i pays the producer at least as
// much as withholding it, by direct evaluation of u_M.
inline std::optional<double> grid_flip_point(const GameConfig& cfg, std::size_t i, double step) {
  const double cap = net_value(cfg, i);
  const auto steps = static_cast<std::size_t>(std::floor(cap / step + 1e-9));
  std::vector<double> tips(cfg.bidders.size(), 0.0);
  std::vector<bool> in(cfg.bidders.size(), false), out(cfg.bidders.size(), false);
  in[i] = true;
  for (std::size_t k = 0; k <= steps; ++k) {
    tips[i] = static_cast<double>(k) * step;
    if (producer_utility(cfg, tips, in) >= producer_utility(cfg, tips, out)) return tips[i];
  }
  return std::nullopt;
}

struct Row {
  Cell cell{0, 0, 0, InclusionDistribution::uniform(0, 10), Mempool::kPublic, false};
  std::size_t bidder = 0;
  double valuation = 0;
  std::optional<double> tau_star;
  std::optional<double> grid_flip;  // sweep mode
  std::optional<double> converged_tip;  // equilibrium mode
  std::string inclusion;            // immediate / delayed
  std::string status;               // ok / mismatch / converged / non-convergence
  std::size_t rounds = 0;
};

inline std::vector<Row> run_sweep(const SweepSpec& s) {
  const auto cs = cells(s);
  auto per_cell = parallel_map<std::vector<Row>>(cs.size(), [&](std::size_t k) {
    const auto& c = cs[k];
    const auto cfg = make_config(s, c);
    std::vector<Row> rows;
    std::optional<EquilibriumResult> eq;
    if (s.mode == RunMode::kEquilibrium) eq = equilibrium_sim(cfg, s.rounds, s.grid_step);
    for (std::size_t i = 0; i < cfg.bidders.size(); ++i) {
      Row r;
      r.cell = c;
      r.bidder = i;
      r.valuation = cfg.bidders[i].valuation;
      r.tau_star = try_min_tip_threshold(cfg, i);
      if (s.mode == RunMode::kSweep) {
        r.grid_flip = grid_flip_point(cfg, i, s.check_step);
        const bool ok = r.tau_star.has_value() == r.grid_flip.has_value() &&
                        (!r.tau_star || std::abs(*r.tau_star - *r.grid_flip) <= 1e-3);
        r.status = ok ? "ok" : "mismatch";
      } else if (eq) {
        r.converged_tip = eq->tips[i];
        r.inclusion = eq->included[i] ? "immediate" : "delayed";
        r.status = std::string(to_string(eq->status));
        r.rounds = eq->rounds;
      }
      rows.push_back(std::move(r));
    }
    return rows;
  });
  std::vector<Row> out;
  for (auto& rs : per_cell) out.insert(out.end(), rs.begin(), rs.end());
  return out;
}

inline std::string csv_header() {
  return "rho,delta,lambda,family,mempool,tb_sig,bidder,valuation,tau_star,grid_flip,"
         "converged_tip,inclusion,status,rounds";
}

inline std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

inline std::string to_csv(const Row& r) {
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("none"); };
  std::ostringstream os;
  os << format_number(r.cell.rho) << ',' << format_number(r.cell.delta) << ','
     << format_number(r.cell.lambda) << ',' << r.cell.family.name() << ','
     << to_string(r.cell.mempool) << ',' << (r.cell.tb_sig ? 1 : 0) << ',' << r.bidder << ','
     << format_number(r.valuation) << ',' << opt(r.tau_star) << ','
     << (r.status == "ok" || r.status == "mismatch" ? opt(r.grid_flip) : "") << ','
     << (r.converged_tip ? format_number(*r.converged_tip) : "") << ',' << r.inclusion << ','
     << r.status << ',' << r.rounds;
  return os.str();
}

// gnuplot-friendly: "rho delta tau_star" with a blank line between blocks
// of equal (family, mempool, tb_sig, bidder, rho); NaN marks no threshold.
inline std::string to_dat(const std::vector<Row>& rows) {
  std::ostringstream os;
  os << "# rho delta tau_star\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    if (k > 0) {
      const auto& p = rows[k - 1];
      if (p.cell.rho != r.cell.rho || p.bidder != r.bidder ||
          p.cell.family.name() != r.cell.family.name() || p.cell.mempool != r.cell.mempool ||
          p.cell.tb_sig != r.cell.tb_sig) {
        os << '\n';
      }
    }
    os << format_number(r.cell.rho) << ' ' << format_number(r.cell.delta) << ' '
       << (r.tau_star ? format_number(*r.tau_star) : "NaN") << '\n';
  }
  return os.str();
}

}  // namespace tbsig::game

#endif  // TBSIG_GAME_SWEEP_HPP_
