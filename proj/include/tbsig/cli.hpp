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

#ifndef TBSIG_CLI_HPP_
#define TBSIG_CLI_HPP_

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tbsig/chain/scenario.hpp"
#include "tbsig/config.hpp"
#include "tbsig/game/sweep.hpp"
#include "tbsig/group/secp256k1.hpp"
#include "tbsig/group/toy_schnorr.hpp"
#include "tbsig/schnorr.hpp"
#include "tbsig/security/experiments.hpp"
#include "tbsig/signature_json.hpp"

namespace tbsig::cli {

// Exit status contract.
inline constexpr int kOk = 0;
inline constexpr int kReject = 1;  // signature rejected, or a claim failed
inline constexpr int kMalformed = 2;
inline constexpr int kPrecondition = 3;

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

inline Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kMalformedEncoding, path + ": cannot open");
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::string& path, ByteView data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kInvalidInput, path + ": cannot write");
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  write_file(path, to_bytes(text));
}

inline Backend parse_backend(const std::string& name) {
  if (name == "curve") return Backend::kCurve256;
  if (name == "toy") return Backend::kToySchnorr;
  throw Error(Errc::kConfig, "backend: expected \"curve\" or \"toy\", got \"" + name + "\"");
}

// Calls fn with the group object for the named backend.
template <class Fn>
decltype(auto) with_backend(Backend b, Fn&& fn) {
  if (b == Backend::kToySchnorr) return fn(ToySchnorrGroup{});
  return fn(Secp256k1Group{});
}

// ---------------------------------------------------------------------------
// keygen / sign / verify

struct KeygenArgs {
  std::string backend = "curve";
  std::optional<std::uint64_t> seed;
  std::string out;
};

template <PrimeOrderGroup G>
nlohmann::json key_json(const G& grp, const KeyPair<G>& kp) {
  return {{"backend", to_string(G::kBackend)},
          {"secret", to_hex(grp.scalar_bytes(kp.secret))},
          {"public", to_hex(grp.serialize(kp.public_key))}};
}

inline int cmd_keygen(const KeygenArgs& a, Streams io) {
  return with_backend(parse_backend(a.backend), [&](const auto& grp) {
    using G = std::decay_t<decltype(grp)>;
    KeyPair<G> kp;
    if (a.seed) {
      CounterRng rng(*a.seed);
      kp = keygen(grp, rng);
    } else {
      OsRng rng;
      kp = keygen(grp, rng);
    }
    write_text(a.out, key_json(grp, kp).dump(2) + "\n", io.out);
    io.out << to_hex(grp.serialize(kp.public_key)) << "\n";
    return kOk;
  });
}

inline Backend backend_of(const nlohmann::json& j, const std::string& path) {
  return parse_backend(config::Node(j, path).at("backend").string());
}

template <PrimeOrderGroup G>
typename G::Element load_public(const G& grp, const nlohmann::json& j, const std::string& path) {
  const auto hex = from_hex(config::Node(j, path).at("public").string());
  std::optional<typename G::Element> y;
  if (hex) y = grp.deserialize(*hex);
  if (!y) throw Error(Errc::kMalformedEncoding, path + ": public key does not decode");
  return *y;
}

// Loads a key file and checks g^s = Y.
template <PrimeOrderGroup G>
KeyPair<G> load_keypair(const G& grp, const nlohmann::json& j, const std::string& path) {
  const auto hex = from_hex(config::Node(j, path).at("secret").string());
  std::optional<typename G::Scalar> s;
  if (hex) s = grp.parse_scalar(*hex);
  if (!s) throw Error(Errc::kMalformedEncoding, path + ": secret does not decode");
  KeyPair<G> kp{*s, load_public(grp, j, path)};
  if (!(grp.exp(grp.generator(), kp.secret) == kp.public_key)) {
    throw Error(Errc::kMalformedEncoding, path + ": public key does not match secret");
  }
  return kp;
}

struct SignArgs {
  std::string key;
  std::string message;
  BlockHeight tc = 0;
  BlockHeight te = 0;
  std::string out;
  std::string format = "bin";  // bin | hex
  std::optional<std::uint64_t> seed;
};

inline int cmd_sign(const SignArgs& a, Streams io) {
  const auto kj = config::load(a.key);
  return with_backend(backend_of(kj, a.key), [&](const auto& grp) {
    const auto kp = load_keypair(grp, kj, a.key);
    const Bytes m = read_file(a.message);
    auto sign = [&](auto& rng) { return tb_sign(grp, kp, m, a.tc, a.te, rng); };
    TimeBoundSignature<std::decay_t<decltype(grp)>> sig;
    if (a.seed) {
      CounterRng rng(*a.seed);
      sig = sign(rng);
    } else {
      OsRng rng;
      sig = sign(rng);
    }
    const Bytes wire = encode_signature(grp, sig);
    if (a.format == "hex") {
      write_text(a.out, to_hex(wire) + "\n", io.out);
    } else {
      write_file(a.out, wire);
    }
    io.out << signature_to_json(grp, sig).dump() << "\n";
    return kOk;
  });
}

struct VerifyArgs {
  std::string pubkey;
  std::string message;
  std::string sig;
  BlockHeight tc = 0;
};

// Raw wire bytes, or the same as hex text.
inline Bytes read_signature_file(const std::string& path, std::size_t wire_size) {
  Bytes raw = read_file(path);
  if (raw.size() == wire_size) return raw;
  std::string text(raw.begin(), raw.end());
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  if (auto hex = from_hex(text)) return *hex;
  return raw;
}

inline int cmd_verify(const VerifyArgs& a, Streams io) {
  const auto pj = config::load(a.pubkey);
  return with_backend(backend_of(pj, a.pubkey), [&](const auto& grp) {
    using G = std::decay_t<decltype(grp)>;
    const auto y = load_public(grp, pj, a.pubkey);
    const Bytes m = read_file(a.message);
    const auto sig = decode_tb_signature(grp, read_signature_file(a.sig, kTimeBoundSignatureSize<G>));
    if (!sig) {
      io.err << "malformed signature\n";
      return kMalformed;
    }
    const bool ok = tb_verify(grp, y, m, *sig, a.tc);
    io.out << (ok ? "accept" : "reject") << "\n";
    return ok ? kOk : kReject;
  });
}

// ---------------------------------------------------------------------------
// chain-sim

struct ChainSimArgs {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string out;
};

inline int cmd_chain_sim(const ChainSimArgs& a, Streams io) {
  const auto s = chain::parse_scenario(config::load(a.scenario));
  const auto res = chain::run_scenario(s, a.seed);
  std::ostringstream log;
  for (const auto& ev : res.events) log << ev.dump() << "\n";
  write_text(a.out, log.str(), io.out);
  return res.chain_valid ? kOk : kReject;
}

// ---------------------------------------------------------------------------
// security

struct SecurityArgs {
  std::string experiment = "eufcma";
  std::string strategy;  // default depends on the experiment
  std::string backend = "toy";
  std::string signer = "simulated";
  std::size_t trials = 1000;
  std::size_t queries = 8;
  std::size_t sign_queries = 1;
  double forge_probability = 0.5;
  std::uint64_t seed = 0;
  std::string out;
};

inline int cmd_security(const SecurityArgs& a, Streams io) {
  const std::string strat_name =
      a.strategy.empty() ? (a.experiment == "eufcma" ? "oracle-guessing" : "honest-forger")
                         : a.strategy;
  const auto strategy = security::parse_strategy(strat_name);
  if (!strategy) throw Error(Errc::kConfig, "strategy: unknown \"" + strat_name + "\"");
  if (a.signer != "real" && a.signer != "simulated") {
    throw Error(Errc::kConfig, "signer: expected real or simulated");
  }
  security::AdversaryConfig adv{0, *strategy, a.queries, a.sign_queries, a.forge_probability};
  const auto backend = parse_backend(a.backend);
  if (a.experiment != "eufcma" && backend != Backend::kToySchnorr) {
    throw Error(Errc::kConfig, "experiment " + a.experiment + " needs --backend toy");
  }
  security::ExperimentRow row;
  if (a.experiment == "eufcma") {
    security::EufcmaParams p{adv, a.trials, a.seed,
                             a.signer == "real" ? security::SignerMode::kReal
                                                : security::SignerMode::kSimulated};
    row = with_backend(backend, [&](const auto& grp) { return security::eufcma_experiment(grp, p); });
  } else if (a.experiment == "fork") {
    security::ForkParams p;
    p.adversary = adv;
    p.trials = a.trials;
    p.seed = a.seed;
    row = security::fork_experiment(ToySchnorrGroup{}, p);
  } else if (a.experiment == "extract") {
    security::ExtractParams p;
    p.adversary = adv;
    p.keys = a.trials;
    p.seed = a.seed;
    row = security::extract_experiment(ToySchnorrGroup{}, p);
  } else {
    throw Error(Errc::kConfig, "experiment: expected eufcma, fork or extract");
  }
  write_text(a.out, security::csv_header() + "\n" + security::to_csv(row) + "\n", io.out);
  return row.pass ? kOk : kReject;
}

// ---------------------------------------------------------------------------
// game

struct GameArgs {
  std::string config;
  std::uint64_t seed = 0;  // the game is deterministic; kept for a uniform interface
  std::string out;
  std::string format = "csv";
};

inline int cmd_game(const GameArgs& a, Streams io) {
  const auto spec = game::parse_sweep(config::load(a.config));
  if (a.format != "csv" && a.format != "dat") throw Error(Errc::kConfig, "format: expected csv or dat");
  const auto rows = game::run_sweep(spec);
  std::string text;
  if (a.format == "dat") {
    text = game::to_dat(rows);
  } else {
    text = game::csv_header() + "\n";
    for (const auto& r : rows) text += game::to_csv(r) + "\n";
  }
  write_text(a.out, text, io.out);
  for (const auto& r : rows) {
    if (r.status == "mismatch" || r.status == "non-convergence") return kReject;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

inline constexpr const char* kExitCodes =
    "EXIT STATUS\n"
    "  0  success / signature accepted\n"
    "  1  signature rejected, or a checked claim failed\n"
    "  2  malformed input or configuration\n"
    "  3  precondition violated (e.g. expiry not above the current height)\n";

inline int run(const std::vector<std::string>& argv, Streams io) {
  CLI::App app{"Time-bound Schnorr signatures: keys, signing, chain simulation, "
               "security experiments and fee-market games."};
  app.name("tbsig");
  app.require_subcommand(1);
  app.footer(kExitCodes);

  KeygenArgs kg;
  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a key pair and write it as JSON.");
  keygen_cmd->add_option("--backend", kg.backend, "Group: curve (secp256k1) or toy (p=23)")
      ->capture_default_str();
  keygen_cmd->add_option("--seed", kg.seed, "Derive the key from this seed (default: OS entropy)");
  keygen_cmd->add_option("--out", kg.out, "Key file; the public key is also printed")->required();
  keygen_cmd->footer(
      "The key file holds {\"backend\", \"secret\", \"public\"} in hex. It doubles as the\n"
      "--pubkey input of verify.\n\nEXAMPLE\n  tbsig keygen --backend toy --seed 1 --out k.json\n");

  SignArgs sg;
  auto* sign_cmd = app.add_subcommand("sign", "Sign a message file valid up to height t_e.");
  sign_cmd->add_option("--key", sg.key, "Key file from keygen")->required();
  sign_cmd->add_option("--message", sg.message, "File whose bytes are signed")->required();
  sign_cmd->add_option("--tc", sg.tc, "Current block height")->required();
  sign_cmd->add_option("--te", sg.te, "Expiry height; must exceed --tc")->required();
  sign_cmd->add_option("--out", sg.out, "Signature output file")->required();
  sign_cmd->add_option("--format", sg.format, "bin (wire bytes) or hex")
      ->check(CLI::IsMember({"bin", "hex"}))
      ->capture_default_str();
  sign_cmd->add_option("--seed", sg.seed, "Nonce seed (default: OS entropy)");
  sign_cmd->footer(
      "Writes R || z || t_e (73 bytes on the curve backend) and prints the JSON form.\n"
      "Exits 3 if t_e <= t_c.\n");

  VerifyArgs vf;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a signature at a given height.");
  verify_cmd->add_option("--pubkey", vf.pubkey, "Key file (only backend and public are read)")
      ->required();
  verify_cmd->add_option("--message", vf.message, "Signed message file")->required();
  verify_cmd->add_option("--sig", vf.sig, "Signature file, binary or hex")->required();
  verify_cmd->add_option("--tc", vf.tc, "Height of the verifying block")->required();
  verify_cmd->footer("Exits 0 on accept, 1 on reject, 2 if the signature does not decode.\n");

  ChainSimArgs cs;
  auto* chain_cmd = app.add_subcommand("chain-sim", "Run a chain scenario and print its event log.");
  chain_cmd->add_option("--scenario", cs.scenario, "Scenario JSON")->required();
  chain_cmd->add_option("--seed", cs.seed, "Seed for keys, nonces and producer lottery")
      ->capture_default_str();
  chain_cmd->add_option("--out", cs.out, "Event log (JSON lines); default stdout");
  chain_cmd->footer("Exits 1 if the final chain fails re-validation.\n");

  SecurityArgs sc;
  auto* sec_cmd = app.add_subcommand("security", "Monte Carlo unforgeability experiments.");
  sec_cmd->add_option("--experiment", sc.experiment, "eufcma, fork or extract")
      ->check(CLI::IsMember({"eufcma", "fork", "extract"}))
      ->capture_default_str();
  sec_cmd->add_option("--strategy", sc.strategy,
                      "oracle-guessing, honest-forger, expiry-substitution or replay");
  sec_cmd->add_option("--backend", sc.backend, "toy or curve (fork/extract: toy only)")
      ->capture_default_str();
  sec_cmd->add_option("--signer", sc.signer, "real or simulated signing oracle")
      ->capture_default_str();
  sec_cmd->add_option("--trials", sc.trials, "Trials (extract: number of keys)")
      ->capture_default_str();
  sec_cmd->add_option("--queries", sc.queries, "Hash-query budget q_H")->capture_default_str();
  sec_cmd->add_option("--sign-queries", sc.sign_queries, "Sign-query budget q_S")
      ->capture_default_str();
  sec_cmd->add_option("--forge-probability", sc.forge_probability,
                      "honest-forger: chance of outputting its forgery")
      ->capture_default_str();
  sec_cmd->add_option("--seed", sc.seed, "Master seed")->capture_default_str();
  sec_cmd->add_option("--out", sc.out, "CSV output; default stdout");
  sec_cmd->footer("CSV columns: strategy,trials,successes,epsilon,bound,pass. Exits 1 on fail.\n");

  GameArgs gm;
  auto* game_cmd = app.add_subcommand("game", "Fee-market threshold, sweep and equilibrium runs.");
  game_cmd->add_option("--config", gm.config, "Game JSON (mode: threshold|sweep|equilibrium)")
      ->required();
  game_cmd->add_option("--seed", gm.seed, "Accepted for uniformity; the game is deterministic");
  game_cmd->add_option("--out", gm.out, "Output file; default stdout");
  game_cmd->add_option("--format", gm.format, "csv or dat (gnuplot)")->capture_default_str();
  game_cmd->footer("Exits 1 if a sweep cell disagrees with its grid check or a run fails to converge.\n");

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  if (!args.empty()) args.pop_back();  // program name
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    io.out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      io.out << app.help();
      return kOk;
    }
    io.err << "tbsig: " << e.what() << "\n";
    return kMalformed;
  }

  try {
    if (*keygen_cmd) return cmd_keygen(kg, io);
    if (*sign_cmd) return cmd_sign(sg, io);
    if (*verify_cmd) return cmd_verify(vf, io);
    if (*chain_cmd) return cmd_chain_sim(cs, io);
    if (*sec_cmd) return cmd_security(sc, io);
    if (*game_cmd) return cmd_game(gm, io);
  } catch (const Error& e) {
    io.err << "tbsig: " << e.what() << "\n";
    return e.code() == Errc::kExpiryNotInFuture ? kPrecondition : kMalformed;
  } catch (const nlohmann::json::exception& e) {
    io.err << "tbsig: " << e.what() << "\n";
    return kMalformed;
  }
  return kMalformed;
}

}  // namespace tbsig::cli

#endif  // TBSIG_CLI_HPP_
