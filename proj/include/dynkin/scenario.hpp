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

// Games with partially observed scenarios: a pair (I, J) is drawn from pi
// before play, player one learns I, player two learns J, and both watch a
// common filtration.

#ifndef DYNKIN_SCENARIO_HPP
#define DYNKIN_SCENARIO_HPP

#include <string>
#include <tuple>
#include <vector>

#include "dynkin/core.hpp"
#include "dynkin/payoff.hpp"

namespace dynkin {

/// The shared information: a grid, finitely many common paths and the
/// filtration both players observe.
struct CommonSetting {
  TimeGrid grid;
  std::vector<Rational> probs;
  Filtration filtration;

  /// One deterministic common path.
  static CommonSetting trivial(TimeGrid grid) {
    const int times = grid.size();
    return {std::move(grid), {Rational(1)}, Filtration::constant(Partition::trivial(1), times)};
  }

  int num_paths() const { return static_cast<int>(probs.size()); }
};

struct ScenarioSpec {
  int I = 1;
  int J = 1;
  std::vector<std::vector<Rational>> pi;  // I x J
  CommonSetting common;
  // Payoff tables per scenario pair, each (common paths) x (grid size).
  std::vector<std::vector<ProcessTable>> f;
  std::vector<std::vector<ProcessTable>> g;
  std::vector<std::vector<ProcessTable>> h;
};

struct ScenarioPath {
  int common = 0;
  int i = 0;
  int j = 0;
};

struct ScenarioGame {
  GameInstance instance;
  std::vector<ScenarioPath> paths;
};

inline void validate_scenario_spec(const ScenarioSpec& s) {
  if (s.I < 1 || s.J < 1) throw DynkinError(ErrorCode::kInvalid, "I and J must be positive");
  if (static_cast<int>(s.pi.size()) != s.I) throw DynkinError(ErrorCode::kInvalid, "pi must have I rows");
  Rational total = 0;
  for (const auto& row : s.pi) {
    if (static_cast<int>(row.size()) != s.J) throw DynkinError(ErrorCode::kInvalid, "pi must have J columns");
    for (const auto& v : row) {
      if (v < 0) throw DynkinError(ErrorCode::kInvalid, "pi has a negative entry");
      total += v;
    }
  }
  if (total != 1) throw DynkinError(ErrorCode::kInvalid, "pi sums to " + to_string(total) + ", not 1");
  if (s.common.num_paths() == 0) throw DynkinError(ErrorCode::kInvalid, "common setting has no paths");
  if (s.common.filtration.size() != s.common.grid.size()) {
    throw DynkinError(ErrorCode::kInvalid, "common filtration length differs from grid size");
  }
  for (const auto* tables : {&s.f, &s.g, &s.h}) {
    if (static_cast<int>(tables->size()) != s.I) throw DynkinError(ErrorCode::kInvalid, "payoff tables need I rows");
    for (const auto& row : *tables) {
      if (static_cast<int>(row.size()) != s.J) throw DynkinError(ErrorCode::kInvalid, "payoff tables need J columns");
      for (const auto& t : row) {
        if (t.num_paths() != s.common.num_paths() || t.num_times() != s.common.grid.size()) {
          throw DynkinError(ErrorCode::kInvalid, "scenario payoff table has the wrong shape");
        }
      }
    }
  }
}

/// Product of the common paths with the scenario pairs of positive weight.
inline ScenarioGame build_scenario_game(const ScenarioSpec& s) {
  validate_scenario_spec(s);
  const int times = s.common.grid.size();
  ScenarioGame out;
  PathSpace space;
  for (int c = 0; c < s.common.num_paths(); ++c) {
    for (int i = 0; i < s.I; ++i) {
      for (int j = 0; j < s.J; ++j) {
        const Rational& w = s.pi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (w == 0) continue;
        out.paths.push_back({c, i, j});
        space.probs.push_back(s.common.probs[static_cast<std::size_t>(c)] * w);
        space.labels.push_back(
            {{"common", std::to_string(c)}, {"i", std::to_string(i + 1)}, {"j", std::to_string(j + 1)}});
      }
    }
  }

  std::vector<Partition> master;
  std::vector<Partition> p1;
  std::vector<Partition> p2;
  for (int k = 0; k < times; ++k) {
    std::vector<std::tuple<int, int, int>> both;
    std::vector<std::pair<int, int>> by_i;
    std::vector<std::pair<int, int>> by_j;
    for (const auto& p : out.paths) {
      const int atom = s.common.filtration.at(k).atom_of(p.common);
      both.emplace_back(atom, p.i, p.j);
      by_i.emplace_back(atom, p.i);
      by_j.emplace_back(atom, p.j);
    }
    master.push_back(Partition::by_key(both));
    p1.push_back(Partition::by_key(by_i));
    p2.push_back(Partition::by_key(by_j));
  }

  auto table = [&](const std::vector<std::vector<ProcessTable>>& src) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& p : out.paths) {
      rows.push_back(src[static_cast<std::size_t>(p.i)][static_cast<std::size_t>(p.j)].rows()[static_cast<std::size_t>(p.common)]);
    }
    return ProcessTable(std::move(rows));
  };
  out.instance = GameInstance(s.common.grid, std::move(space), Filtration(std::move(master)), Filtration(std::move(p1)),
                              Filtration(std::move(p2)), table(s.f), table(s.g), table(s.h));
  return out;
}

/// The common-filtration game with scenario (i, j)'s payoffs; both players
/// observe only the common filtration.
inline GameInstance scenario_common_instance(const ScenarioSpec& s, int i, int j) {
  validate_scenario_spec(s);
  const auto is = static_cast<std::size_t>(i);
  const auto js = static_cast<std::size_t>(j);
  return GameInstance(s.common.grid, PathSpace{s.common.probs, {}}, s.common.filtration, s.common.filtration,
                      s.common.filtration, s.f.at(is).at(js), s.g.at(is).at(js), s.h.at(is).at(js));
}

/// Combines one common-filtration strategy per private scenario index into a
/// strategy on the product game: tau = tau_I for player one, sigma = sigma_J
/// for player two.
inline BehavioralStrategy glue_scenario_strategies(const ScenarioSpec& s, const ScenarioGame& game, Player owner,
                                                   const std::vector<BehavioralStrategy>& per_index) {
  const int expected = owner == Player::kOne ? s.I : s.J;
  if (static_cast<int>(per_index.size()) != expected) {
    throw DynkinError(ErrorCode::kInvalid, "need one strategy per private scenario index");
  }
  for (const auto& b : per_index) {
    if (b.owner() != owner) throw DynkinError(ErrorCode::kInvalid, "per-scenario strategy has the wrong owner");
  }
  const auto& fl = game.instance.filtration(owner);
  std::vector<std::vector<Rational>> inc;
  for (int k = 0; k <= game.instance.terminal(); ++k) {
    std::vector<Rational> row;
    for (const auto& atom : fl.at(k).atoms()) {
      const auto& p = game.paths[static_cast<std::size_t>(atom.front())];
      const int idx = owner == Player::kOne ? p.i : p.j;
      row.push_back(per_index[static_cast<std::size_t>(idx)].increment(k, s.common.filtration.at(k).atom_of(p.common)));
    }
    inc.push_back(std::move(row));
  }
  BehavioralStrategy out(owner, std::move(inc));
  validate_strategy(out, game.instance);
  return out;
}

/// sum_{i,j} pi_ij N^{ij}(xi_i, zeta_j), each term on the common-filtration game.
inline Rational scenario_expected_payoff(const ScenarioSpec& s, const std::vector<BehavioralStrategy>& xi,
                                         const std::vector<BehavioralStrategy>& zeta) {
  validate_scenario_spec(s);
  if (static_cast<int>(xi.size()) != s.I || static_cast<int>(zeta.size()) != s.J) {
    throw DynkinError(ErrorCode::kInvalid, "need I player-one and J player-two strategies");
  }
  Rational total = 0;
  for (int i = 0; i < s.I; ++i) {
    for (int j = 0; j < s.J; ++j) {
      const Rational& w = s.pi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (w == 0) continue;
      total += w * expected_payoff(scenario_common_instance(s, i, j), xi[static_cast<std::size_t>(i)],
                                   zeta[static_cast<std::size_t>(j)]);
    }
  }
  return total;
}

}  // namespace dynkin

#endif  // DYNKIN_SCENARIO_HPP
