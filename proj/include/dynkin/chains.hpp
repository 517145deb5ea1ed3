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

// Games driven by finite Markov chains observed one step per grid index.

#ifndef DYNKIN_CHAINS_HPP
#define DYNKIN_CHAINS_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dynkin/core.hpp"
#include "dynkin/solver.hpp"

namespace dynkin {

struct ChainSpec {
  std::vector<Rational> states;                    // state values passed to payoff functions
  std::vector<Rational> initial;                   // distribution of the state at index 0
  std::vector<std::vector<Rational>> transition;   // row-stochastic

  /// A chain that never leaves `value`.
  static ChainSpec constant(const Rational& value) { return {{value}, {Rational(1)}, {{Rational(1)}}}; }
};

using PayoffFn = std::function<Rational(const Rational& t, const Rational& x, const Rational& y)>;

struct TwoChainPayoffs {
  PayoffFn f;
  PayoffFn g;
  PayoffFn h;
};

struct ChainGame {
  GameInstance instance;
  std::vector<std::vector<int>> x_states;  // per path, state index at each k
  std::vector<std::vector<int>> y_states;
  std::vector<std::string> warnings;
};

namespace detail {

inline void validate_chain(const ChainSpec& c) {
  const std::size_t n = c.states.size();
  if (n == 0) throw DynkinError(ErrorCode::kInvalid, "chain has no states");
  if (c.initial.size() != n || c.transition.size() != n) {
    throw DynkinError(ErrorCode::kInvalid, "chain initial law and transition matrix must match the state count");
  }
  auto check_row = [](const std::vector<Rational>& row, const char* what) {
    Rational total = 0;
    for (const auto& v : row) {
      if (v < 0) throw DynkinError(ErrorCode::kInvalid, std::string(what) + " has a negative entry");
      total += v;
    }
    if (total != 1) throw DynkinError(ErrorCode::kInvalid, std::string(what) + " does not sum to 1");
  };
  check_row(c.initial, "initial law");
  for (const auto& row : c.transition) {
    if (row.size() != n) throw DynkinError(ErrorCode::kInvalid, "transition matrix is not square");
    check_row(row, "transition row");
  }
}

/// All trajectories of length `times` with positive probability.
inline std::vector<std::pair<std::vector<int>, Rational>> trajectories(const ChainSpec& c, int times) {
  std::vector<std::pair<std::vector<int>, Rational>> out;
  for (std::size_t s = 0; s < c.states.size(); ++s) {
    if (c.initial[s] > 0) out.push_back({{static_cast<int>(s)}, c.initial[s]});
  }
  for (int k = 1; k < times; ++k) {
    std::vector<std::pair<std::vector<int>, Rational>> next;
    for (const auto& [traj, p] : out) {
      const auto& row = c.transition[static_cast<std::size_t>(traj.back())];
      for (std::size_t s = 0; s < row.size(); ++s) {
        if (row[s] == 0) continue;
        auto t = traj;
        t.push_back(static_cast<int>(s));
        next.push_back({std::move(t), p * row[s]});
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::vector<int> prefix(const std::vector<int>& v, int k) {
  return {v.begin(), v.begin() + k + 1};
}

}  // namespace detail

/// Independent chains X and Y; player one sees the history of X, player two
/// that of Y, and payoffs are functions of (t, X_t, Y_t).
inline ChainGame build_two_chain_game(const ChainSpec& x, const ChainSpec& y, const TimeGrid& grid,
                                      const TwoChainPayoffs& pay, std::int64_t cap = kDefaultEnumerationCap) {
  detail::validate_chain(x);
  detail::validate_chain(y);
  const int times = grid.size();
  const auto xs = detail::trajectories(x, times);
  const auto ys = detail::trajectories(y, times);

  ChainGame out;
  PathSpace space;
  std::vector<std::vector<Rational>> f;
  std::vector<std::vector<Rational>> g;
  std::vector<std::vector<Rational>> h;
  for (const auto& [tx, px] : xs) {
    for (const auto& [ty, py] : ys) {
      out.x_states.push_back(tx);
      out.y_states.push_back(ty);
      space.probs.push_back(px * py);
      std::vector<Rational> fr;
      std::vector<Rational> gr;
      std::vector<Rational> hr;
      for (int k = 0; k < times; ++k) {
        const Rational& xv = x.states[static_cast<std::size_t>(tx[static_cast<std::size_t>(k)])];
        const Rational& yv = y.states[static_cast<std::size_t>(ty[static_cast<std::size_t>(k)])];
        fr.push_back(pay.f(grid[k], xv, yv));
        gr.push_back(pay.g(grid[k], xv, yv));
        hr.push_back(pay.h(grid[k], xv, yv));
      }
      f.push_back(std::move(fr));
      g.push_back(std::move(gr));
      h.push_back(std::move(hr));
    }
  }

  std::vector<Partition> master;
  std::vector<Partition> p1;
  std::vector<Partition> p2;
  for (int k = 0; k < times; ++k) {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> both;
    std::vector<std::vector<int>> kx;
    std::vector<std::vector<int>> ky;
    for (std::size_t w = 0; w < out.x_states.size(); ++w) {
      kx.push_back(detail::prefix(out.x_states[w], k));
      ky.push_back(detail::prefix(out.y_states[w], k));
      both.emplace_back(kx.back(), ky.back());
    }
    master.push_back(Partition::by_key(both));
    p1.push_back(Partition::by_key(kx));
    p2.push_back(Partition::by_key(ky));
  }
  out.instance = GameInstance(grid, std::move(space), Filtration(std::move(master)), Filtration(std::move(p1)),
                              Filtration(std::move(p2)), ProcessTable(std::move(f)), ProcessTable(std::move(g)),
                              ProcessTable(std::move(h)));
  for (Player p : {Player::kOne, Player::kTwo}) {
    if (count_pure(out.instance, p, cap) > cap) {
      out.warnings.push_back("player " + std::to_string(player_number(p)) + " has more than " + std::to_string(cap) +
                             " pure stopping times; exact solving is infeasible, use fictitious play");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Binomial analogue of a diffusion with a hidden drift type

struct BinomialSpec {
  TimeGrid grid;
  Rational x0 = 0;
  Rational step = 1;                   // X moves by +step or -step
  std::vector<Rational> type_probs;    // law of the hidden type J
  std::vector<Rational> up_probs;      // P(up move | J = j)
  bool player1_sees_type = false;
  std::function<Rational(const Rational& t, const Rational& x)> f;
  std::function<Rational(const Rational& t, const Rational& x)> g;
  std::function<Rational(const Rational& t, const Rational& x)> h;
};

/// Both players watch the walk X; the up-probability depends on a type J
/// drawn at time 0, which player one may additionally observe. This is a
/// finite illustration of a diffusion game with unknown drift, not a
/// discretisation with convergence guarantees.
inline GameInstance build_binomial_game(const BinomialSpec& s) {
  if (s.type_probs.empty() || s.type_probs.size() != s.up_probs.size()) {
    throw DynkinError(ErrorCode::kInvalid, "binomial spec needs one up-probability per type");
  }
  Rational total = 0;
  for (std::size_t j = 0; j < s.type_probs.size(); ++j) {
    if (s.type_probs[j] < 0 || s.up_probs[j] < 0 || s.up_probs[j] > 1) {
      throw DynkinError(ErrorCode::kInvalid, "binomial probabilities must lie in [0, 1]");
    }
    total += s.type_probs[j];
  }
  if (total != 1) throw DynkinError(ErrorCode::kInvalid, "type probabilities do not sum to 1");

  const int K = s.grid.terminal();
  std::vector<int> type;
  std::vector<std::vector<int>> moves;  // +1 / -1 per step
  PathSpace space;
  for (std::size_t j = 0; j < s.type_probs.size(); ++j) {
    if (s.type_probs[j] == 0) continue;
    for (long code = 0; code < (1L << K); ++code) {
      std::vector<int> mv;
      Rational p = s.type_probs[j];
      for (int k = 0; k < K; ++k) {
        const bool up = (code >> k) & 1;
        mv.push_back(up ? 1 : -1);
        p *= up ? s.up_probs[j] : 1 - s.up_probs[j];
      }
      if (p == 0) continue;
      type.push_back(static_cast<int>(j));
      moves.push_back(std::move(mv));
      space.probs.push_back(p);
    }
  }

  std::vector<std::vector<Rational>> f;
  std::vector<std::vector<Rational>> g;
  std::vector<std::vector<Rational>> h;
  for (const auto& mv : moves) {
    std::vector<Rational> fr;
    std::vector<Rational> gr;
    std::vector<Rational> hr;
    Rational x = s.x0;
    for (int k = 0; k <= K; ++k) {
      if (k > 0) x += s.step * mv[static_cast<std::size_t>(k - 1)];
      fr.push_back(s.f(s.grid[k], x));
      gr.push_back(s.g(s.grid[k], x));
      hr.push_back(s.h(s.grid[k], x));
    }
    f.push_back(std::move(fr));
    g.push_back(std::move(gr));
    h.push_back(std::move(hr));
  }

  std::vector<Partition> master;
  std::vector<Partition> observed;
  for (int k = 0; k <= K; ++k) {
    std::vector<std::pair<int, std::vector<int>>> full;
    std::vector<std::vector<int>> walk;
    for (std::size_t w = 0; w < moves.size(); ++w) {
      walk.emplace_back(moves[w].begin(), moves[w].begin() + k);
      full.emplace_back(type[w], walk.back());
    }
    master.push_back(Partition::by_key(full));
    observed.push_back(Partition::by_key(walk));
  }
  Filtration fm(std::move(master));
  Filtration fx(std::move(observed));
  return GameInstance(s.grid, std::move(space), fm, s.player1_sees_type ? fm : fx, fx, ProcessTable(std::move(f)),
                      ProcessTable(std::move(g)), ProcessTable(std::move(h)));
}

}  // namespace dynkin

#endif  // DYNKIN_CHAINS_HPP
