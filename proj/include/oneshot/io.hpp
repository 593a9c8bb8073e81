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

// JSON file formats.
//
//   channel      {"name": s?, "x": int, "y": int, "rows": [[float...]...]}
//   set system   {"ground": int, "d": int, "sets": [[int...]...]}
//   code         {"k": int, "codewords": [int...], "decoder": [int per y]}
//   LP solution  {"k": int, "value": float, "p": [...], "r": [[...]...]}
//   distribution {"probs": [float...]}
//
// Readers validate their input and raise Errc::ParseError on malformed JSON
// or shape mismatches; domain validation errors pass through unchanged.

#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oneshot/bounds.hpp"
#include "oneshot/channel.hpp"
#include "oneshot/coding.hpp"
#include "oneshot/error.hpp"
#include "oneshot/hypothesis.hpp"
#include "oneshot/metaconverse.hpp"
#include "oneshot/rounding.hpp"

namespace oneshot::io {

using json = nlohmann::ordered_json;

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline json parse(const std::string& text, const std::string& what = "input") {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, what + ": " + e.what());
  }
}

namespace detail {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(Errc::ParseError, std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace detail

inline json to_json(const Channel& w) {
  json j;
  if (!w.name().empty()) j["name"] = w.name();
  j["x"] = w.x_size();
  j["y"] = w.y_size();
  j["rows"] = w.rows();
  return j;
}

inline Channel channel_from_json(const json& j) {
  const auto xs = detail::field<std::size_t>(j, "x");
  const auto ys = detail::field<std::size_t>(j, "y");
  const auto rows = detail::field<std::vector<std::vector<double>>>(j, "rows");
  if (rows.size() != xs) throw Error(Errc::ParseError, "\"rows\" length differs from \"x\"");
  for (const auto& r : rows)
    if (r.size() != ys) throw Error(Errc::ParseError, "row length differs from \"y\"");
  std::string name = j.contains("name") ? detail::field<std::string>(j, "name") : std::string{};
  return Channel::validate(rows, std::move(name));
}

inline json to_json(const SetSystem& s) {
  return json{{"ground", s.ground_size}, {"d", s.d}, {"sets", s.sets}};
}

inline SetSystem set_system_from_json(const json& j) {
  SetSystem s;
  s.ground_size = detail::field<std::size_t>(j, "ground");
  s.d = detail::field<std::size_t>(j, "d");
  s.sets = detail::field<std::vector<std::vector<std::size_t>>>(j, "sets");
  s.validate();
  return s;
}

inline json to_json(const Code& c) {
  return json{{"k", c.k}, {"codewords", c.codewords}, {"decoder", c.decoder}};
}

inline Code code_from_json(const json& j) {
  Code c;
  c.k = detail::field<std::size_t>(j, "k");
  c.codewords = detail::field<std::vector<std::size_t>>(j, "codewords");
  c.decoder = detail::field<std::vector<std::size_t>>(j, "decoder");
  if (c.codewords.empty() || c.codewords.size() > c.k)
    throw Error(Errc::ParseError, "code needs 1..k codewords");
  for (std::size_t d : c.decoder)
    if (d >= c.codewords.size()) throw Error(Errc::ParseError, "decoder output outside codeword range");
  return c;
}

inline json to_json(const LPSolution& s) {
  return json{{"k", s.k}, {"value", s.value}, {"p", s.p}, {"r", s.r.to_nested()}};
}

inline LPSolution lp_solution_from_json(const json& j) {
  LPSolution s;
  s.k = detail::field<std::size_t>(j, "k");
  s.value = detail::field<double>(j, "value");
  s.p = detail::field<std::vector<double>>(j, "p");
  const auto r = detail::field<std::vector<std::vector<double>>>(j, "r");
  if (r.size() != s.p.size() || r.empty()) throw Error(Errc::ParseError, "\"r\" must have one row per input");
  s.r = Matrix(r.size(), r.front().size());
  for (std::size_t x = 0; x < r.size(); ++x) {
    if (r[x].size() != s.r.cols()) throw Error(Errc::ParseError, "\"r\" must be rectangular");
    for (std::size_t y = 0; y < r[x].size(); ++y) s.r(x, y) = r[x][y];
  }
  validate_solution(s);
  return s;
}

inline json distribution_to_json(const std::vector<double>& probs) { return json{{"probs", probs}}; }

inline std::vector<double> distribution_from_json(const json& j) {
  auto probs = detail::field<std::vector<double>>(j, "probs");
  validate_distribution(probs);
  return probs;
}

inline json to_json(const RoundingReport& r) {
  return json{{"k", r.k},
              {"l", r.l},
              {"exact_expectation", r.exact_expectation},
              {"mc_mean", r.mc_mean},
              {"mc_stddev", r.mc_stddev},
              {"mc_trials", r.mc_trials},
              {"bound", r.bound},
              {"seed", r.seed}};
}

inline json to_json(const Check& c) {
  return json{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"residual", c.residual}, {"passed", c.passed}};
}

inline json to_json(const BoundReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return json{{"channel", r.channel_id},
              {"k", r.k},
              {"l", r.l},
              {"s_exact", r.s_exact},
              {"s_greedy", r.s_greedy},
              {"s_ns_k", r.s_ns_k},
              {"s_ns_l", r.s_ns_l},
              {"rounding_expectation", r.rounding_expectation},
              {"ratio", r.ratio},
              {"checks", checks},
              {"passed", r.passed()}};
}

/// Nested arrays indexed [x][j][i][y].
inline json to_json(const NSBox& box) {
  json out = json::array();
  for (std::size_t x = 0; x < box.x_size(); ++x) {
    json jx = json::array();
    for (std::size_t j = 0; j < box.k(); ++j) {
      json jj = json::array();
      for (std::size_t i = 0; i < box.k(); ++i) {
        json ji = json::array();
        for (std::size_t y = 0; y < box.y_size(); ++y) ji.push_back(box(x, j, i, y));
        jj.push_back(std::move(ji));
      }
      jx.push_back(std::move(jj));
    }
    out.push_back(std::move(jx));
  }
  return out;
}

inline json to_json(const ChannelTest& t) {
  return json{{"mu", t.mu}, {"test", t.test.to_nested()}, {"value", t.value}};
}

inline Channel load_channel(const std::string& path) {
  return channel_from_json(parse(read_text(path), path));
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::ParseError, "cannot write " + path);
  out << text;
}

}  // namespace oneshot::io
