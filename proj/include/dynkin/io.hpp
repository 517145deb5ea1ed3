// Copyright 2026 The Dynkin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON file formats (version 1). Rationals are written as "num/den" strings;
// integers are also accepted on input. Keys are emitted in sorted order, so
// parse -> serialize is byte-stable.

#ifndef DYNKIN_IO_HPP
#define DYNKIN_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynkin/core.hpp"
#include "dynkin/solver.hpp"

namespace dynkin {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

enum class NumberMode { kExact, kFloat };

inline std::string format_number(const Rational& q, NumberMode mode) {
  return mode == NumberMode::kExact ? to_string(q) : to_decimal(q, 12);
}

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) { throw DynkinError(ErrorCode::kMalformed, what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
  malformed("expected a rational as \"num/den\" string or integer, got " + j.dump());
}

inline int int_from_json(const Json& j) {
  if (!j.is_number_integer()) malformed("expected an integer, got " + j.dump());
  return j.get<int>();
}

inline std::vector<Rational> rational_list(const Json& j) {
  if (!j.is_array()) malformed("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(rational_from_json(v));
  return out;
}

inline Json to_json_list(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

inline Partition partition_from_json(const Json& j, int n) {
  if (!j.is_array()) malformed("partition must be an array of atoms");
  std::vector<std::vector<int>> atoms;
  for (const auto& a : j) {
    if (!a.is_array()) malformed("atom must be an array of path indices");
    std::vector<int> atom;
    for (const auto& w : a) atom.push_back(int_from_json(w));
    atoms.push_back(std::move(atom));
  }
  return Partition(std::move(atoms), n);
}

inline Json partition_to_json(const Partition& p) {
  Json out = Json::array();
  for (const auto& a : p.atoms()) out.push_back(a);
  return out;
}

inline Filtration filtration_from_json(const Json& j, int n) {
  if (!j.is_array()) malformed("filtration must be an array of partitions");
  std::vector<Partition> parts;
  for (const auto& p : j) parts.push_back(partition_from_json(p, n));
  return Filtration(std::move(parts));
}

inline Json filtration_to_json(const Filtration& f) {
  Json out = Json::array();
  for (const auto& p : f.partitions()) out.push_back(partition_to_json(p));
  return out;
}

inline ProcessTable table_from_json(const Json& j) {
  if (!j.is_array()) malformed("payoff table must be an array of per-path arrays");
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : j) rows.push_back(rational_list(r));
  return ProcessTable(std::move(rows));
}

inline Json table_to_json(const ProcessTable& t) {
  Json out = Json::array();
  for (const auto& r : t.rows()) out.push_back(to_json_list(r));
  return out;
}

inline void check_header(const Json& j, const char* format) {
  if (!j.is_object()) malformed("top-level value must be an object");
  if (j.contains("format") && j.at("format") != format) {
    malformed(std::string("expected format '") + format + "', got " + j.at("format").dump());
  }
  if (j.contains("version") && j.at("version") != kFormatVersion) {
    malformed("unsupported format version " + j.at("version").dump());
  }
}

template <typename F>
auto guard(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw DynkinError(ErrorCode::kMalformed, std::string("JSON error: ") + e.what());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Instances

inline Json instance_to_json(const GameInstance& inst) {
  Json j;
  j["format"] = "dynkin-instance";
  j["version"] = kFormatVersion;
  j["grid"] = detail::to_json_list(inst.grid().times());
  Json paths = Json::array();
  for (int w = 0; w < inst.num_paths(); ++w) {
    Json p;
    p["prob"] = to_string(inst.prob(w));
    p["labels"] = inst.space().labels.empty() ? Json::object() : Json(inst.space().labels[static_cast<std::size_t>(w)]);
    paths.push_back(std::move(p));
  }
  j["paths"] = std::move(paths);
  j["filtrations"] = {{"master", detail::filtration_to_json(inst.master())},
                      {"p1", detail::filtration_to_json(inst.filtration(Player::kOne))},
                      {"p2", detail::filtration_to_json(inst.filtration(Player::kTwo))}};
  j["payoffs"] = {{"f", detail::table_to_json(inst.f())},
                  {"g", detail::table_to_json(inst.g())},
                  {"h", detail::table_to_json(inst.h())}};
  if (inst.initial_partition()) j["initial_partition"] = detail::partition_to_json(*inst.initial_partition());
  return j;
}

inline GameInstance instance_from_json(const Json& j) {
  return detail::guard([&] {
    detail::check_header(j, "dynkin-instance");
    TimeGrid grid(detail::rational_list(detail::field(j, "grid")));
    PathSpace space;
    const auto& paths = detail::field(j, "paths");
    if (!paths.is_array()) detail::malformed("paths must be an array");
    bool any_labels = false;
    for (const auto& p : paths) {
      space.probs.push_back(detail::rational_from_json(detail::field(p, "prob")));
      Labels labels;
      if (p.contains("labels")) {
        if (!p.at("labels").is_object()) detail::malformed("labels must be an object of strings");
        for (const auto& [k, v] : p.at("labels").items()) {
          if (!v.is_string()) detail::malformed("label values must be strings");
          labels[k] = v.get<std::string>();
        }
      }
      any_labels = any_labels || !labels.empty();
      space.labels.push_back(std::move(labels));
    }
    if (!any_labels) space.labels.clear();
    const int n = space.size();
    const auto& fl = detail::field(j, "filtrations");
    const auto& pay = detail::field(j, "payoffs");
    std::optional<Partition> initial;
    if (j.contains("initial_partition") && !j.at("initial_partition").is_null()) {
      initial = detail::partition_from_json(j.at("initial_partition"), n);
    }
    return GameInstance(std::move(grid), std::move(space), detail::filtration_from_json(detail::field(fl, "master"), n),
                        detail::filtration_from_json(detail::field(fl, "p1"), n),
                        detail::filtration_from_json(detail::field(fl, "p2"), n),
                        detail::table_from_json(detail::field(pay, "f")), detail::table_from_json(detail::field(pay, "g")),
                        detail::table_from_json(detail::field(pay, "h")), std::move(initial));
  });
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw DynkinError(ErrorCode::kMalformed, std::string("JSON parse error: ") + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DynkinError(ErrorCode::kMalformed, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DynkinError(ErrorCode::kMalformed, "cannot write '" + path + "'");
  out << text;
}

inline GameInstance read_instance_file(const std::string& path) { return instance_from_json(read_json_file(path)); }

/// Canonical text of an instance; parse -> serialize reproduces it exactly.
inline std::string serialize_instance(const GameInstance& inst) { return dump_json(instance_to_json(inst)); }

// ---------------------------------------------------------------------------
// Strategies

inline Json strategy_to_json(const BehavioralStrategy& b) {
  Json inc = Json::array();
  for (const auto& row : b.increments()) inc.push_back(detail::to_json_list(row));
  return {{"format", "dynkin-strategy"},
          {"version", kFormatVersion},
          {"kind", "behavioral"},
          {"player", player_number(b.owner())},
          {"increments", std::move(inc)}};
}

inline Json strategy_to_json(const PureStoppingTime& t) {
  return {{"format", "dynkin-strategy"},
          {"version", kFormatVersion},
          {"kind", "pure"},
          {"player", player_number(t.owner())},
          {"stop_index", t.indices()}};
}

inline Json strategy_to_json(const MixedStrategy& m) {
  Json support = Json::array();
  for (const auto& s : m.support()) support.push_back({{"weight", to_string(s.weight)}, {"stop_index", s.time.indices()}});
  return {{"format", "dynkin-strategy"},
          {"version", kFormatVersion},
          {"kind", "mixed"},
          {"player", player_number(m.owner())},
          {"support", std::move(support)}};
}

/// Reads any strategy kind and returns its behavioural form, validated
/// against the instance.
inline BehavioralStrategy strategy_from_json(const Json& j, const GameInstance& inst) {
  return detail::guard([&] {
    detail::check_header(j, "dynkin-strategy");
    const Player owner = player_from_number(detail::int_from_json(detail::field(j, "player")));
    const auto& kind_json = detail::field(j, "kind");
    if (!kind_json.is_string()) detail::malformed("strategy kind must be a string");
    const std::string kind = kind_json.get<std::string>();
    auto indices = [](const Json& a) {
      if (!a.is_array()) detail::malformed("stop_index must be an array");
      std::vector<int> out;
      for (const auto& v : a) out.push_back(detail::int_from_json(v));
      return out;
    };
    BehavioralStrategy b;
    if (kind == "behavioral") {
      const auto& inc = detail::field(j, "increments");
      if (!inc.is_array()) detail::malformed("increments must be an array of per-time arrays");
      std::vector<std::vector<Rational>> rows;
      for (const auto& r : inc) rows.push_back(detail::rational_list(r));
      b = BehavioralStrategy(owner, std::move(rows));
    } else if (kind == "pure") {
      b = behavioral_from_pure(PureStoppingTime(owner, indices(detail::field(j, "stop_index")), inst), inst);
    } else if (kind == "mixed") {
      std::vector<WeightedPure> support;
      for (const auto& s : detail::field(j, "support")) {
        support.push_back({PureStoppingTime(owner, indices(detail::field(s, "stop_index")), inst),
                           detail::rational_from_json(detail::field(s, "weight"))});
      }
      b = behavioral_from_mixed(MixedStrategy(owner, std::move(support)), inst);
    } else {
      detail::malformed("unknown strategy kind '" + kind + "'");
    }
    validate_strategy(b, inst);
    return b;
  });
}

inline BehavioralStrategy read_strategy_file(const std::string& path, const GameInstance& inst) {
  return strategy_from_json(read_json_file(path), inst);
}

// ---------------------------------------------------------------------------
// Reports

inline Json value_json(const Rational& q, NumberMode mode) { return format_number(q, mode); }

inline Json increments_json(const BehavioralStrategy& b, NumberMode mode) {
  Json out = Json::array();
  for (const auto& row : b.increments()) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(format_number(v, mode));
    out.push_back(std::move(r));
  }
  return out;
}

inline Json mixed_json(const MixedStrategy& m, NumberMode mode) {
  Json out = Json::array();
  for (const auto& s : m.support()) out.push_back({{"weight", format_number(s.weight, mode)}, {"stop_index", s.time.indices()}});
  return out;
}

inline Json report_to_json(const GameValueReport& r, NumberMode mode) {
  const auto& c = r.certificate;
  return {{"lower_value", value_json(r.lower_value, mode)},
          {"upper_value", value_json(r.upper_value, mode)},
          {"gap", value_json(r.gap, mode)},
          {"value", value_json(r.value(), mode)},
          {"class_p1", to_string(r.class_p1)},
          {"class_p2", to_string(r.class_p2)},
          {"num_pure_p1", r.num_pure_p1},
          {"num_pure_p2", r.num_pure_p2},
          {"lp_pivots", r.lp_pivots},
          {"optimal_p1", {{"behavioral", increments_json(r.optimal_p1, mode)}, {"mixed", mixed_json(r.optimal_p1_mixed, mode)}}},
          {"optimal_p2", {{"behavioral", increments_json(r.optimal_p2, mode)}, {"mixed", mixed_json(r.optimal_p2_mixed, mode)}}},
          {"certificate",
           {{"best_response_p1", value_json(c.best_response_p1, mode)},
            {"best_response_p2", value_json(c.best_response_p2, mode)},
            {"min_over_p1_deviations", value_json(c.min_col_deviation, mode)},
            {"max_over_p2_deviations", value_json(c.max_row_deviation, mode)},
            {"p1_deviations_checked", c.p1_deviations_checked},
            {"p2_deviations_checked", c.p2_deviations_checked},
            {"holds", c.holds}}}};
}

/// CSV rows: player,time_index,time,atom,paths,increment. `paths` lists the
/// atom's members separated by spaces.
inline std::string strategy_csv(const GameInstance& inst, const std::vector<BehavioralStrategy>& strategies,
                                NumberMode mode) {
  std::ostringstream out;
  out << "player,time_index,time,atom,paths,increment\n";
  for (const auto& b : strategies) {
    const auto& fl = inst.filtration(b.owner());
    for (int k = 0; k <= inst.terminal(); ++k) {
      for (int a = 0; a < fl.at(k).num_atoms(); ++a) {
        out << player_number(b.owner()) << ',' << k << ',' << format_number(inst.grid()[k], mode) << ',' << a << ',';
        const auto& atom = fl.at(k).atom(a);
        for (std::size_t i = 0; i < atom.size(); ++i) out << (i ? " " : "") << atom[i];
        out << ',' << format_number(b.increment(k, a), mode) << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace dynkin

#endif  // DYNKIN_IO_HPP
