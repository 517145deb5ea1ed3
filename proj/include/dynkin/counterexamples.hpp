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

// Three two-scenario games on [0, 1]. Player one learns which of two equally
// likely scenarios holds at time 0; player two never does. The scenarios
// differ only in the terminal tie payoff.
//
//   order:     f = 1, g = t/2, terminal h = (2, 0). Violates f >= h >= g.
//   uninformed: piecewise-linear f and g, terminal h = (0, 5).
//   jumps:     f jumps up by 2 and g down by 1 at 1/2, terminal h = (3, -1).
//
// Path 0 is scenario 1 and path 1 is scenario 2.

#ifndef DYNKIN_COUNTEREXAMPLES_HPP
#define DYNKIN_COUNTEREXAMPLES_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "dynkin/core.hpp"
#include "dynkin/scenario.hpp"

namespace dynkin {

enum class Counterexample { kOrder, kUninformed, kJumps };

inline std::string counterexample_id(Counterexample c) {
  switch (c) {
    case Counterexample::kOrder: return "9.1";
    case Counterexample::kUninformed: return "9.2";
    case Counterexample::kJumps: return "9.3";
  }
  return "";
}

inline Counterexample counterexample_from_id(const std::string& id) {
  if (id == "9.1") return Counterexample::kOrder;
  if (id == "9.2") return Counterexample::kUninformed;
  if (id == "9.3") return Counterexample::kJumps;
  throw DynkinError(ErrorCode::kMalformed, "unknown counterexample '" + id + "'; expected 9.1, 9.2 or 9.3");
}

inline int default_grid_k(Counterexample) { return 10; }

/// Union of the uniform grid k/K on [0, 1] with the example's breakpoints.
inline TimeGrid counterexample_grid(Counterexample c, int K) {
  if (K < 1) throw DynkinError(ErrorCode::kInvalid, "grid refinement K must be at least 1");
  std::vector<Rational> t;
  for (int k = 0; k <= K; ++k) t.push_back(rational(k, K));
  switch (c) {
    case Counterexample::kOrder: break;
    case Counterexample::kUninformed:
      t.push_back(rational(1, 10));
      t.push_back(rational(2, 5));
      t.push_back(rational(1, 2));
      t.push_back(rational(3, 5));
      break;
    case Counterexample::kJumps: t.push_back(rational(1, 2)); break;
  }
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return TimeGrid(std::move(t));
}

namespace detail {

inline Rational cx_f(Counterexample c, const Rational& t) {
  switch (c) {
    case Counterexample::kOrder: return 1;
    case Counterexample::kUninformed: return t < rational(1, 10) ? Rational(10 * t + 4) : Rational(5);
    case Counterexample::kJumps: return t >= rational(1, 2) ? 3 : 1;
  }
  return 0;
}

inline Rational cx_g(Counterexample c, const Rational& t) {
  switch (c) {
    case Counterexample::kOrder: return t / 2;
    case Counterexample::kUninformed:
      if (t >= rational(2, 5) && t < rational(1, 2)) return 15 * t - 6;
      if (t >= rational(1, 2) && t < rational(3, 5)) return 9 - 15 * t;
      return 0;
    case Counterexample::kJumps: return t >= rational(1, 2) ? -1 : 0;
  }
  return 0;
}

inline Rational cx_terminal_h(Counterexample c, int scenario) {
  switch (c) {
    case Counterexample::kOrder: return scenario == 0 ? 2 : 0;
    case Counterexample::kUninformed: return scenario == 0 ? 0 : 5;
    case Counterexample::kJumps: return scenario == 0 ? 3 : -1;
  }
  return 0;
}

}  // namespace detail

/// Scenario specification of a counterexample on its canonical grid. Ties
/// before T pay f.
inline ScenarioSpec counterexample_spec(Counterexample c, int K) {
  ScenarioSpec s;
  s.I = 2;
  s.J = 1;
  s.pi = {{rational(1, 2)}, {rational(1, 2)}};
  s.common = CommonSetting::trivial(counterexample_grid(c, K));
  const auto& grid = s.common.grid;
  for (int i = 0; i < 2; ++i) {
    std::vector<Rational> f;
    std::vector<Rational> g;
    std::vector<Rational> h;
    for (int k = 0; k <= grid.terminal(); ++k) {
      f.push_back(detail::cx_f(c, grid[k]));
      g.push_back(detail::cx_g(c, grid[k]));
      h.push_back(k == grid.terminal() ? detail::cx_terminal_h(c, i) : f.back());
    }
    s.f.push_back({ProcessTable({f})});
    s.g.push_back({ProcessTable({g})});
    s.h.push_back({ProcessTable({h})});
  }
  return s;
}

inline GameInstance counterexample(Counterexample c, int K) { return build_scenario_game(counterexample_spec(c, K)).instance; }
inline GameInstance counterexample(Counterexample c) { return counterexample(c, default_grid_k(c)); }

/// Player one's pure time stopping at index k1 in scenario 1 and k2 in scenario 2.
inline PureStoppingTime informed_time(const GameInstance& inst, int k1, int k2) {
  return PureStoppingTime(Player::kOne, {k1, k2}, inst);
}

/// Player two's deterministic strategy: mass[k] at index k.
inline BehavioralStrategy uninformed_strategy(const GameInstance& inst, const std::vector<Rational>& mass) {
  return deterministic_strategy(Player::kTwo, inst, mass);
}

/// Player one's strategy with deterministic CDFs per scenario.
inline BehavioralStrategy informed_strategy(const GameInstance& inst, const std::vector<Rational>& mass1,
                                            const std::vector<Rational>& mass2) {
  std::vector<std::vector<Rational>> inc;
  for (std::size_t k = 0; k < mass1.size(); ++k) inc.push_back({mass1[k], mass2.at(k)});
  BehavioralStrategy b(Player::kOne, std::move(inc));
  validate_strategy(b, inst);
  return b;
}

/// Stop at t = 1/2 with probability a and at T otherwise.
inline BehavioralStrategy uninformed_zeta_a(const GameInstance& inst, const Rational& a) {
  if (a < 0 || a > 1) throw DynkinError(ErrorCode::kInvalid, "a must lie in [0, 1]");
  const auto half = inst.grid().index_of(rational(1, 2));
  if (!half) throw DynkinError(ErrorCode::kInvalid, "grid does not contain 1/2");
  std::vector<Rational> mass(static_cast<std::size_t>(inst.grid().size()), Rational(0));
  mass[static_cast<std::size_t>(*half)] += a;
  mass.back() += 1 - a;
  return uninformed_strategy(inst, mass);
}

/// Player one's reply to a pure sigma in the uninformed example: wait to the
/// end in both scenarios unless sigma = T, then stop at once in scenario 2.
inline PureStoppingTime uninformed_tau_hat(const GameInstance& inst, int sigma_index) {
  const int K = inst.terminal();
  return sigma_index < K ? informed_time(inst, K, K) : informed_time(inst, K, 0);
}

}  // namespace dynkin

#endif  // DYNKIN_COUNTEREXAMPLES_HPP
