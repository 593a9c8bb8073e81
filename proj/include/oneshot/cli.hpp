// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: generate, compute, verify, sweep.
//
// Results go to `out` as a JSON envelope {"command", "digest", "payload"}
// (or bare CSV for `sweep --format csv`); diagnostics go to `err`.
// Exit codes: 0 success, 1 bad input or usage, 2 numerical failure or a
// failed verification.

#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oneshot/bounds.hpp"
#include "oneshot/channel.hpp"
#include "oneshot/coding.hpp"
#include "oneshot/error.hpp"
#include "oneshot/hypothesis.hpp"
#include "oneshot/io.hpp"
#include "oneshot/metaconverse.hpp"
#include "oneshot/rounding.hpp"

namespace oneshot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

namespace detail {

/// 64-bit FNV-1a.
class Digest {
 public:
  void update(std::string_view bytes) {
    for (unsigned char c : bytes) {
      hash_ ^= c;
      hash_ *= 0x100000001b3ULL;
    }
    hash_ ^= 0xff;  // field separator
    hash_ *= 0x100000001b3ULL;
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
    return buf;
  }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

struct Options {
  std::string family, method, check = "theorem3", format = "json";
  std::string channel, sets, output, p_dist, q_dist;
  std::size_t k = 0, l = 0, t = 0, n = 1, x = 2, y = 2;
  std::size_t l_min = 1, l_max = 0;
  double p = 0.0, eps = 0.0, alpha = 0.0;
  std::uint64_t seed = 0;
  std::size_t trials = 10000;
  double tol = 1e-7;
  double max_subsets = kDefaultEnumerationCap;
  bool dump_box = false;
};

struct Outcome {
  io::json payload;
  bool passed = true;
};

inline std::size_t require_k(const Options& o) {
  if (o.k == 0) throw Error(Errc::InvalidArgument, "--k is required and must be >= 1");
  return o.k;
}

inline Channel load_channel(const Options& o) {
  if (o.channel.empty()) throw Error(Errc::InvalidArgument, "--channel is required");
  return io::load_channel(o.channel);
}

inline Outcome run_generate(const Options& o) {
  Channel w = [&] {
    if (o.family == "bsc") return make_bsc(o.p);
    if (o.family == "erasure") return make_erasure(o.eps);
    if (o.family == "tightness") return make_tightness(require_k(o), o.t);
    if (o.family == "coverage") {
      if (o.sets.empty()) throw Error(Errc::InvalidArgument, "--sets is required for coverage");
      return from_set_system(io::set_system_from_json(io::parse(io::read_text(o.sets), o.sets)));
    }
    if (o.family == "tensor") return tensor_power(load_channel(o), o.n);
    if (o.family == "random") return random_channel(o.x, o.y, o.seed);
    throw Error(Errc::InvalidArgument, "unknown family " + o.family);
  }();
  io::json j = io::to_json(w);
  if (!o.output.empty()) io::write_text(o.output, j.dump(2) + "\n");
  return {j, true};
}

inline Outcome run_compute(const Options& o) {
  io::json payload;
  payload["method"] = o.method;
  if (o.method == "beta" && !o.p_dist.empty()) {
    const auto p = io::distribution_from_json(io::parse(io::read_text(o.p_dist), o.p_dist));
    if (o.q_dist.empty()) throw Error(Errc::InvalidArgument, "--Q is required with --P");
    const auto q = io::distribution_from_json(io::parse(io::read_text(o.q_dist), o.q_dist));
    const TestResult lp = beta(p, q, o.alpha);
    const TestResult np = beta_neyman_pearson(p, q, o.alpha);
    payload["alpha"] = o.alpha;
    payload["value"] = lp.value;
    payload["test"] = lp.test;
    payload["neyman_pearson_value"] = np.value;
    const bool agree = std::abs(lp.value - np.value) <= 1e-9;
    payload["agree"] = agree;
    return {payload, agree};
  }

  const Channel w = load_channel(o);
  const std::size_t k = require_k(o);
  payload["k"] = k;
  if (o.method == "exact") {
    const auto res = exact_opt(w, k, o.max_subsets);
    payload["value"] = res.value;
    payload["code"] = io::to_json(res.code);
  } else if (o.method == "greedy") {
    const auto res = greedy(w, k);
    payload["value"] = res.value;
    payload["code"] = io::to_json(res.code);
    payload["gains"] = res.trace.gains;
  } else if (o.method == "ns-lp") {
    const LPSolution sol = ns_value(w, k);
    payload["value"] = sol.value;
    payload["solution"] = io::to_json(sol);
    if (o.dump_box) payload["box"] = io::to_json(box_from_lp(sol));
  } else if (o.method == "mc-rounding") {
    const std::size_t l = o.l ? o.l : k;
    const LPSolution sol = ns_value(w, k);
    const RoundingReport rep = monte_carlo(w, sol, l, o.trials, o.seed);
    payload["value"] = rep.exact_expectation;
    payload["report"] = io::to_json(rep);
    payload["consistent"] = rep.consistent();
    return {payload, rep.consistent()};
  } else if (o.method == "beta") {
    const LPSolution sol = ns_value(w, k);
    const ChannelTest from_lp = test_from_lp(w, sol);
    const ChannelTest best = max_nu_beta(w, k, from_lp.mu);
    payload["one_minus_ns"] = 1.0 - sol.value;
    payload["value"] = best.value;
    payload["test"] = io::to_json(best);
    const bool agree = std::abs(best.value - (1.0 - sol.value)) <= 1e-6;
    payload["agree"] = agree;
    return {payload, agree};
  } else {
    throw Error(Errc::InvalidArgument, "unknown method " + o.method);
  }
  return {payload, true};
}

inline Outcome run_verify(const Options& o) {
  const Channel w = load_channel(o);
  const std::size_t k = require_k(o);
  const std::size_t l = o.l ? o.l : k;
  const bool all = o.check == "all";
  io::json payload;
  payload["check"] = o.check;
  bool passed = true;
  bool matched = false;

  if (all || o.check == "theorem3") {
    matched = true;
    const BoundReport rep = verify_theorem3(w, k, l, o.tol, o.max_subsets);
    payload["theorem3"] = io::to_json(rep);
    passed = passed && rep.passed();
  }
  if (all || o.check == "centered") {
    matched = true;
    const double residual = verify_centered(w, k, o.max_subsets);
    payload["centered"] = {{"residual", residual}, {"passed", residual >= -o.tol}};
    passed = passed && residual >= -o.tol;
  }
  if (all || o.check == "lemma4") {
    matched = true;
    // Every greedy prefix against the LP's optimal p.
    const LPSolution sol = ns_value(w, k);
    const GreedyResult g = greedy(w, w.x_size());
    io::json rows = io::json::array();
    double worst = kInfinity;
    for (const auto& prefix : g.trace.chain) {
      const double residual = verify_lemma4(w, prefix, sol.p);
      worst = std::min(worst, residual);
      rows.push_back({{"set", prefix}, {"residual", residual}});
    }
    payload["lemma4"] = {{"min_residual", worst}, {"prefixes", rows}, {"passed", worst >= -o.tol}};
    passed = passed && worst >= -o.tol;
  }
  if (all || o.check == "appendix-b") {
    matched = true;
    const MinMaxBetaReport rep = verify_min_max_beta(w, k);
    payload["appendix_b"] = {{"ns_value", rep.ns_value},
                             {"at_lp_mu", rep.at_lp_mu},
                             {"min_random_mu", rep.min_random_mu},
                             {"samples", rep.samples},
                             {"passed", rep.passed()}};
    passed = passed && rep.passed();
  }
  if (all || o.check == "nsbox") {
    matched = true;
    const LPSolution sol = ns_value(w, k);
    const NSBox box = box_from_lp(sol);
    const double violation = box.ns_violation();
    const double box_value = box.success_probability(w);
    const LPSolution back = lp_from_box(box, w, k);
    const bool ok = violation <= 1e-9 && std::abs(box_value - sol.value) <= 1e-9 &&
                    std::abs(back.value - sol.value) <= 1e-9;
    payload["nsbox"] = {{"lp_value", sol.value},
                        {"box_value", box_value},
                        {"round_trip_value", back.value},
                        {"max_violation", violation},
                        {"passed", ok}};
    if (o.dump_box) payload["nsbox"]["box"] = io::to_json(box);
    passed = passed && ok;
  }
  if (!matched) throw Error(Errc::InvalidArgument, "unknown check " + o.check);
  payload["passed"] = passed;
  return {payload, passed};
}

inline Outcome run_sweep(const Options& o) {
  const Channel w = load_channel(o);
  const std::size_t l_max = o.l_max ? o.l_max : w.x_size();
  const auto rows = sweep(w, o.l_min, l_max, o.max_subsets);
  io::json arr = io::json::array();
  for (const auto& r : rows)
    arr.push_back({{"l", r.l}, {"s_value", r.s_value}, {"s_ns", r.s_ns}, {"method", to_string(r.method)}});
  io::json payload;
  payload["rows"] = arr;
  payload["csv"] = sweep_csv(rows);
  return {payload, true};
}

inline int exit_code_for(Errc code) {
  return code == Errc::NumericalFailure ? kExitFailure : kExitUsage;
}

}  // namespace detail

/// Runs one CLI invocation; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"One-shot channel coding: exact, greedy, non-signaling and hypothesis-testing values"};
  app.require_subcommand(1);

  auto add_channel = [&](CLI::App* sub) {
    sub->add_option("--channel", o.channel, "Channel JSON file");
  };
  auto add_caps = [&](CLI::App* sub) {
    sub->add_option("--max-subsets", o.max_subsets, "Exact-search enumeration cap");
  };

  auto* gen = app.add_subcommand("generate", "Write a channel from a generator family");
  gen->add_option("--family", o.family, "Generator family")
      ->required()
      ->check(CLI::IsMember({"bsc", "erasure", "tightness", "coverage", "tensor", "random"}));
  gen->add_option("--p", o.p, "BSC crossover probability");
  gen->add_option("--eps", o.eps, "Erasure probability");
  gen->add_option("--k", o.k, "Tightness family k");
  gen->add_option("--t", o.t, "Tightness family t");
  gen->add_option("--n", o.n, "Tensor power");
  gen->add_option("--x", o.x, "Random channel |X|");
  gen->add_option("--y", o.y, "Random channel |Y|");
  gen->add_option("--sets", o.sets, "Set system JSON file (coverage)");
  gen->add_option("--seed", o.seed, "Seed (random family)");
  gen->add_option("-o,--output", o.output, "Also write the channel JSON here");
  add_channel(gen);

  auto* compute = app.add_subcommand("compute", "Compute one value for a channel");
  add_channel(compute);
  add_caps(compute);
  compute->add_option("--k", o.k, "Number of messages");
  compute->add_option("--l", o.l, "Sampled codewords for mc-rounding (default k)");
  compute->add_option("--method", o.method, "Method")
      ->required()
      ->check(CLI::IsMember({"exact", "greedy", "ns-lp", "mc-rounding", "beta"}));
  compute->add_option("--trials", o.trials, "Monte-Carlo trials");
  compute->add_option("--seed", o.seed, "Monte-Carlo seed");
  compute->add_flag("--dump-box", o.dump_box, "Include the non-signaling box (ns-lp)");
  compute->add_option("--P", o.p_dist, "Distribution JSON for P (beta)");
  compute->add_option("--Q", o.q_dist, "Distribution JSON for Q (beta)");
  compute->add_option("--alpha", o.alpha, "Significance level (beta with --P/--Q)");

  auto* verify = app.add_subcommand("verify", "Check the coding inequalities on a channel");
  add_channel(verify);
  add_caps(verify);
  verify->add_option("--k", o.k, "Messages for the relaxation");
  verify->add_option("--l", o.l, "Messages for the classical code (default k)");
  verify->add_option("--check", o.check, "Which check")
      ->check(CLI::IsMember({"theorem3", "centered", "lemma4", "appendix-b", "nsbox", "all"}));
  verify->add_option("--tol", o.tol, "Residual tolerance");
  verify->add_flag("--dump-box", o.dump_box, "Include the box in nsbox output");

  auto* sw = app.add_subcommand("sweep", "Tabulate S and S_NS over a range of message counts");
  add_channel(sw);
  add_caps(sw);
  sw->add_option("--l-min", o.l_min, "First l");
  sw->add_option("--l-max", o.l_max, "Last l (default |X|)");
  sw->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  const std::string command = active->get_name();

  try {
    detail::Digest digest;
    for (const auto& a : args) digest.update(a);
    for (const std::string* path : {&o.channel, &o.sets, &o.p_dist, &o.q_dist})
      if (!path->empty()) digest.update(io::read_text(*path));

    detail::Outcome outcome;
    if (command == "generate")
      outcome = detail::run_generate(o);
    else if (command == "compute")
      outcome = detail::run_compute(o);
    else if (command == "verify")
      outcome = detail::run_verify(o);
    else
      outcome = detail::run_sweep(o);

    if (command == "sweep" && o.format == "csv") {
      out << outcome.payload["csv"].get<std::string>();
    } else {
      io::json envelope;
      std::string echo = command;
      for (std::size_t i = 1; i < args.size(); ++i) echo += " " + args[i];
      envelope["command"] = echo;
      envelope["digest"] = digest.hex();
      envelope["payload"] = outcome.payload;
      out << envelope.dump(2) << "\n";
    }
    if (!outcome.passed) {
      err << "verification failed\n";
      return kExitFailure;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return detail::exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace oneshot::cli
