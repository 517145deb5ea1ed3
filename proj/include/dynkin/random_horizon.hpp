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

// Games killed at an independent random time theta that only player one
// observes. theta takes finitely many values strictly between grid points
// (or beyond T), so no grid stopping time can coincide with it.
//
// The killed game is encoded directly in its tables: every payoff is
// multiplied by 1{t < theta}. The epsilon-shifted game keeps f alive until
// theta + epsilon instead.

#ifndef DYNKIN_RANDOM_HORIZON_HPP
#define DYNKIN_RANDOM_HORIZON_HPP

#include <algorithm>
#include <vector>

#include "dynkin/core.hpp"

namespace dynkin {

struct HorizonPoint {
  Rational theta;
  Rational mass;
};

struct RandomHorizonSpec {
  TimeGrid grid;
  std::vector<Rational> probs;  // base paths
  Filtration base;              // information without theta
  ProcessTable f0;
  ProcessTable g0;
  ProcessTable h0;
  std::vector<HorizonPoint> horizon;
  Rational epsilon;
};

struct RandomHorizonPair {
  GameInstance killed;   // payoffs times 1{t < theta}
  GameInstance shifted;  // f times 1{t < theta + epsilon}, g and h times 1{t < theta}
  std::vector<std::pair<int, int>> paths;  // (base path, horizon point)
};

inline void validate_random_horizon_spec(const RandomHorizonSpec& s) {
  const int n = static_cast<int>(s.probs.size());
  if (n == 0) throw DynkinError(ErrorCode::kInvalid, "random-horizon spec has no base paths");
  if (s.base.size() != s.grid.size()) throw DynkinError(ErrorCode::kInvalid, "base filtration length differs from grid");
  for (const auto* t : {&s.f0, &s.g0, &s.h0}) {
    if (t->num_paths() != n || t->num_times() != s.grid.size()) {
      throw DynkinError(ErrorCode::kInvalid, "base payoff table has the wrong shape");
    }
  }
  for (const auto& row : s.f0.rows()) {
    for (const auto& v : row) {
      if (v < 0) throw DynkinError(ErrorCode::kInvalid, "f0 must be non-negative");
    }
  }
  if (s.horizon.empty()) throw DynkinError(ErrorCode::kInvalid, "horizon distribution is empty");
  Rational total = 0;
  std::vector<Rational> seen;
  for (const auto& h : s.horizon) {
    if (h.mass <= 0) throw DynkinError(ErrorCode::kInvalid, "horizon masses must be positive");
    if (h.theta <= 0) throw DynkinError(ErrorCode::kInvalid, "theta must be positive");
    if (s.grid.index_of(h.theta)) {
      throw DynkinError(ErrorCode::kInvalid, "theta " + to_string(h.theta) + " lies on the grid");
    }
    if (std::find(seen.begin(), seen.end(), h.theta) != seen.end()) {
      throw DynkinError(ErrorCode::kInvalid, "horizon points must be distinct");
    }
    seen.push_back(h.theta);
    total += h.mass;
  }
  if (total != 1) throw DynkinError(ErrorCode::kInvalid, "horizon masses sum to " + to_string(total));
  if (s.epsilon <= 0) throw DynkinError(ErrorCode::kInvalid, "epsilon must be positive");
}

inline RandomHorizonPair build_random_horizon_pair(const RandomHorizonSpec& s) {
  validate_random_horizon_spec(s);
  const int times = s.grid.size();
  RandomHorizonPair out;
  PathSpace space;
  for (int c = 0; c < static_cast<int>(s.probs.size()); ++c) {
    for (int h = 0; h < static_cast<int>(s.horizon.size()); ++h) {
      out.paths.emplace_back(c, h);
      space.probs.push_back(s.probs[static_cast<std::size_t>(c)] * s.horizon[static_cast<std::size_t>(h)].mass);
      space.labels.push_back({{"base", std::to_string(c)}, {"theta", to_string(s.horizon[static_cast<std::size_t>(h)].theta)}});
    }
  }

  std::vector<Partition> informed;
  std::vector<Partition> uninformed;
  for (int k = 0; k < times; ++k) {
    std::vector<std::pair<int, int>> key1;
    std::vector<int> key2;
    for (auto [c, h] : out.paths) {
      const int atom = s.base.at(k).atom_of(c);
      const bool occurred = s.horizon[static_cast<std::size_t>(h)].theta < s.grid[k];
      key1.emplace_back(atom, occurred ? h : -1);
      key2.push_back(atom);
    }
    informed.push_back(Partition::by_key(key1));
    uninformed.push_back(Partition::by_key(key2));
  }

  auto table = [&](const ProcessTable& base, const Rational& extra) {
    std::vector<std::vector<Rational>> rows;
    for (auto [c, h] : out.paths) {
      const Rational alive_until = s.horizon[static_cast<std::size_t>(h)].theta + extra;
      std::vector<Rational> row;
      for (int k = 0; k < times; ++k) row.push_back(s.grid[k] < alive_until ? base(c, k) : Rational(0));
      rows.push_back(std::move(row));
    }
    return ProcessTable(std::move(rows));
  };
  const Filtration master(informed);
  out.killed = GameInstance(s.grid, space, master, master, Filtration(uninformed), table(s.f0, 0), table(s.g0, 0),
                            table(s.h0, 0));
  out.shifted = GameInstance(s.grid, space, master, master, Filtration(uninformed), table(s.f0, s.epsilon),
                             table(s.g0, 0), table(s.h0, 0));
  return out;
}

}  // namespace dynkin

#endif  // DYNKIN_RANDOM_HORIZON_HPP
