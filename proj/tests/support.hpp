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

// Random small instances and strategies, plus brute-force oracles that share
// no code with the engines they check.

#ifndef DYNKIN_TESTS_SUPPORT_HPP
#define DYNKIN_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "dynkin/dynkin.hpp"

namespace dynkin::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  int uniform(int lo, int hi) { return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return (gen_() & 1) != 0; }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

struct InstanceOptions {
  int max_paths = 4;
  int max_steps = 5;
  bool ordered = false;      // enforce f >= h >= g
  bool with_initial = false; // attach an initial partition coarser than both players' time-0 partitions
  int min_paths = 1;
  int min_steps = 1;
};

inline TimeGrid random_grid(Rng& rng, int steps) {
  std::vector<Rational> t{Rational(0)};
  for (int k = 0; k < steps; ++k) t.push_back(t.back() + rational(rng.uniform(1, 4), rng.uniform(1, 3) * 4));
  return TimeGrid(std::move(t));
}

/// Master information reveals one random symbol per path per step; each
/// player sees a masked or coarsened copy, so player partitions are
/// coarsenings of the master and refine over time.
inline GameInstance random_instance(Rng& rng, const InstanceOptions& opt = {}) {
  const int n = rng.uniform(opt.min_paths, opt.max_paths);
  const int K = rng.uniform(opt.min_steps, opt.max_steps);
  const TimeGrid grid = random_grid(rng, K);

  std::vector<int> weights;
  int total = 0;
  for (int w = 0; w < n; ++w) {
    weights.push_back(rng.uniform(1, 5));
    total += weights.back();
  }
  PathSpace space;
  for (int w : weights) space.probs.push_back(rational(w, total));

  std::vector<std::vector<int>> symbols(static_cast<std::size_t>(n));
  for (auto& s : symbols) {
    for (int k = 0; k <= K; ++k) s.push_back(rng.uniform(0, 2));
  }
  // view[p][k]: 0 hidden, 1 parity only, 2 full symbol.
  std::vector<std::vector<int>> view(3);
  for (auto& v : view) {
    for (int k = 0; k <= K; ++k) v.push_back(rng.uniform(0, 2));
  }
  auto filtration = [&](int p) {
    std::vector<Partition> parts;
    for (int k = 0; k <= K; ++k) {
      std::vector<std::vector<int>> keys;
      for (int w = 0; w < n; ++w) {
        std::vector<int> key;
        for (int j = 0; j <= k; ++j) {
          const int s = symbols[static_cast<std::size_t>(w)][static_cast<std::size_t>(j)];
          const int mode = p == 0 ? 2 : view[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)];
          key.push_back(mode == 0 ? 0 : (mode == 1 ? s % 2 : s));
        }
        keys.push_back(std::move(key));
      }
      parts.push_back(Partition::by_key(keys));
    }
    return Filtration(std::move(parts));
  };
  const Filtration master = filtration(0);

  auto f = ProcessTable::filled(n, K + 1, Rational(0));
  auto g = f;
  auto h = f;
  for (int k = 0; k <= K; ++k) {
    for (const auto& atom : master.at(k).atoms()) {
      Rational fv;
      Rational gv;
      Rational hv;
      if (opt.ordered) {
        gv = rational(rng.uniform(-6, 6), rng.uniform(1, 3));
        hv = gv + rational(rng.uniform(0, 4), rng.uniform(1, 2));
        fv = hv + rational(rng.uniform(0, 4), rng.uniform(1, 2));
      } else {
        fv = rational(rng.uniform(-6, 6), rng.uniform(1, 3));
        gv = rational(rng.uniform(-6, 6), rng.uniform(1, 3));
        hv = rational(rng.uniform(-6, 6), rng.uniform(1, 3));
      }
      for (int w : atom) {
        f(w, k) = fv;
        g(w, k) = gv;
        h(w, k) = hv;
      }
    }
  }
  GameInstance inst(grid, std::move(space), master, filtration(1), filtration(2), std::move(f), std::move(g),
                    std::move(h));
  if (opt.with_initial) {
    // Join of the two time-0 partitions: connected components of "shares an atom".
    const auto& a = inst.filtration(Player::kOne).at(0);
    const auto& b = inst.filtration(Player::kTwo).at(0);
    std::vector<int> comp(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) comp[static_cast<std::size_t>(w)] = w;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int w = 0; w < n; ++w) {
        for (int v = 0; v < n; ++v) {
          if ((a.atom_of(w) == a.atom_of(v) || b.atom_of(w) == b.atom_of(v)) &&
              comp[static_cast<std::size_t>(v)] < comp[static_cast<std::size_t>(w)]) {
            comp[static_cast<std::size_t>(w)] = comp[static_cast<std::size_t>(v)];
            changed = true;
          }
        }
      }
    }
    inst = inst.with_initial_partition(Partition::by_key(comp));
  }
  return inst;
}

/// Random behavioural strategy: at each atom stop with a random conditional
/// probability from {0, 1/4, ..., 1}; forced stop at K.
inline BehavioralStrategy random_strategy(Rng& rng, const GameInstance& inst, Player owner) {
  const auto& fl = inst.filtration(owner);
  const int K = inst.terminal();
  std::vector<Rational> remaining(static_cast<std::size_t>(inst.num_paths()), Rational(1));
  std::vector<std::vector<Rational>> inc;
  for (int k = 0; k <= K; ++k) {
    std::vector<Rational> row;
    for (const auto& atom : fl.at(k).atoms()) {
      const Rational q = k == K ? Rational(1) : rational(rng.uniform(0, 4), 4);
      const Rational m = remaining[static_cast<std::size_t>(atom.front())] * q;
      for (int w : atom) remaining[static_cast<std::size_t>(w)] -= m;
      row.push_back(m);
    }
    inc.push_back(std::move(row));
  }
  return BehavioralStrategy(owner, std::move(inc));
}

// ---------------------------------------------------------------------------
// Brute-force oracles

/// Every index map w -> k that is a stopping time for `owner`, found by
/// filtering all (K+1)^n maps; independent of the tree-walking enumerator.
inline std::vector<std::vector<int>> brute_force_stopping_maps(const GameInstance& inst, Player owner) {
  const int n = inst.num_paths();
  const int K = inst.terminal();
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  for (;;) {
    try {
      PureStoppingTime t(owner, idx, inst);
      out.push_back(idx);
    } catch (const DynkinError&) {
    }
    int pos = 0;
    while (pos < n && idx[static_cast<std::size_t>(pos)] == K) idx[static_cast<std::size_t>(pos++)] = 0;
    if (pos == n) break;
    ++idx[static_cast<std::size_t>(pos)];
  }
  return out;
}

/// E[P(tau, sigma)] straight from the payoff definition.
inline Rational brute_pure_payoff(const GameInstance& inst, const std::vector<int>& tau, const std::vector<int>& sigma) {
  Rational total = 0;
  for (int w = 0; w < inst.num_paths(); ++w) {
    const int a = tau[static_cast<std::size_t>(w)];
    const int b = sigma[static_cast<std::size_t>(w)];
    const Rational& v = a < b ? inst.f()(w, a) : (b < a ? inst.g()(w, b) : inst.h()(w, a));
    total += inst.prob(w) * v;
  }
  return total;
}

}  // namespace dynkin::testing

#endif  // DYNKIN_TESTS_SUPPORT_HPP
