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

// Lipschitz regularisation of a generating process by convolution with the
// ramp kernel (n t) clamped to [0, 1].
//
// A grid strategy is read as a right-continuous step function of continuous
// time that jumps only at grid points. Its convolution with the ramp is
// continuous on [0, T), so it is evaluated both at grid points and as a left
// limit at T, and its payoff is the continuous-time functional of that
// process against step-function payoffs.

#ifndef DYNKIN_MOLLIFIER_HPP
#define DYNKIN_MOLLIFIER_HPP

#include <vector>

#include "dynkin/core.hpp"
#include "dynkin/payoff.hpp"

namespace dynkin {

/// max(0, min(1, n t)).
inline Rational kernel(long n, const Rational& t) {
  if (n <= 0) throw DynkinError(ErrorCode::kInvalid, "kernel parameter n must be positive");
  Rational v = t * n;
  if (v < 0) return 0;
  if (v > 1) return 1;
  return v;
}

struct MollifiedStrategy {
  BehavioralStrategy base;
  long n = 0;
  // values[w][k]: the mollified CDF at grid time t_k on path w; values[w][K] = 1.
  std::vector<std::vector<Rational>> values;
  // left_at_terminal[w]: the left limit at T on path w.
  std::vector<Rational> left_at_terminal;
};

/// Smallest n with n * (min grid step) >= 1.
inline long saturation_n(const TimeGrid& grid) {
  const Rational n = ceil_rational(1 / grid.min_step());
  if (!n.get_num().fits_slong_p()) throw DynkinError(ErrorCode::kInfeasibleSize, "grid step too small");
  return n.get_num().get_si();
}

/// True when the mollified values are constant on the owner's atoms at each
/// index, and the left limit at T on the atoms at K - 1.
inline bool is_adapted(const MollifiedStrategy& m, const GameInstance& inst) {
  const auto& fl = inst.filtration(m.base.owner());
  const int K = inst.terminal();
  for (int k = 0; k <= K; ++k) {
    for (const auto& atom : fl.at(k).atoms()) {
      for (int w : atom) {
        if (m.values[static_cast<std::size_t>(w)][static_cast<std::size_t>(k)] !=
            m.values[static_cast<std::size_t>(atom.front())][static_cast<std::size_t>(k)]) {
          return false;
        }
      }
    }
  }
  for (const auto& atom : fl.at(K - 1).atoms()) {
    for (int w : atom) {
      if (m.left_at_terminal[static_cast<std::size_t>(w)] != m.left_at_terminal[static_cast<std::size_t>(atom.front())]) {
        return false;
      }
    }
  }
  return true;
}

inline MollifiedStrategy mollify(const BehavioralStrategy& b, const GameInstance& inst, long n) {
  if (n <= 0) throw DynkinError(ErrorCode::kInvalid, "mollifier parameter n must be positive");
  validate_strategy(b, inst);
  const auto proc = path_process(b, inst);
  const auto& t = inst.grid();
  const int K = inst.terminal();

  MollifiedStrategy m;
  m.base = b;
  m.n = n;
  m.values.assign(static_cast<std::size_t>(inst.num_paths()), std::vector<Rational>(static_cast<std::size_t>(K + 1)));
  m.left_at_terminal.assign(static_cast<std::size_t>(inst.num_paths()), Rational(0));
  for (int w = 0; w < inst.num_paths(); ++w) {
    const auto& mass = proc.mass[static_cast<std::size_t>(w)];
    auto& row = m.values[static_cast<std::size_t>(w)];
    for (int k = 0; k < K; ++k) {
      Rational acc = 0;
      for (int j = 0; j <= k; ++j) {
        if (mass[static_cast<std::size_t>(j)] != 0) acc += kernel(n, t[k] - t[j]) * mass[static_cast<std::size_t>(j)];
      }
      row[static_cast<std::size_t>(k)] = acc;
    }
    row[static_cast<std::size_t>(K)] = 1;
    Rational left = 0;
    for (int j = 0; j < K; ++j) {
      if (mass[static_cast<std::size_t>(j)] != 0) left += kernel(n, t[K] - t[j]) * mass[static_cast<std::size_t>(j)];
    }
    m.left_at_terminal[static_cast<std::size_t>(w)] = left;
  }
  if (!is_adapted(m, inst)) throw DynkinError(ErrorCode::kInternal, "mollified strategy lost adaptedness");
  return m;
}

/// |x_a - x_b| <= n |t_a - t_b| for all grid indices a, b < K, on every path.
inline bool lipschitz_holds(const MollifiedStrategy& m, const GameInstance& inst) {
  const auto& t = inst.grid();
  const int K = inst.terminal();
  for (const auto& row : m.values) {
    for (int a = 0; a < K; ++a) {
      for (int b = a + 1; b < K; ++b) {
        if (abs(row[static_cast<std::size_t>(b)] - row[static_cast<std::size_t>(a)]) > (t[b] - t[a]) * m.n) {
          return false;
        }
      }
    }
  }
  return true;
}

/// Nondecreasing in time on every path, including the left limit at T.
inline bool is_monotone(const MollifiedStrategy& m) {
  for (std::size_t w = 0; w < m.values.size(); ++w) {
    const auto& row = m.values[w];
    const std::size_t K = row.size() - 1;
    for (std::size_t k = 1; k < K; ++k) {
      if (row[k] < row[k - 1]) return false;
    }
    if (m.left_at_terminal[w] < row[K - 1] || row[K] < m.left_at_terminal[w]) return false;
  }
  return true;
}

/// The grid strategy with increments of the mollified values: what a player
/// restricted to grid times would play.
inline BehavioralStrategy grid_strategy(const MollifiedStrategy& m, const GameInstance& inst) {
  const auto& fl = inst.filtration(m.base.owner());
  std::vector<std::vector<Rational>> inc;
  for (int k = 0; k <= inst.terminal(); ++k) {
    std::vector<Rational> row;
    for (const auto& atom : fl.at(k).atoms()) {
      const auto& v = m.values[static_cast<std::size_t>(atom.front())];
      row.push_back(k == 0 ? v[0] : v[static_cast<std::size_t>(k)] - v[static_cast<std::size_t>(k - 1)]);
    }
    inc.push_back(std::move(row));
  }
  return BehavioralStrategy(m.base.owner(), std::move(inc));
}

/// N(x^n, other) for the continuous mollified process x^n against a grid
/// strategy of the opponent. x^n has no jumps before T, so there are no
/// simultaneous stops before T; its only jump is 1 - x^n_{T-} at T.
inline Rational mollified_payoff(const GameInstance& inst, const MollifiedStrategy& m, const BehavioralStrategy& other) {
  if (other.owner() == m.base.owner()) throw DynkinError(ErrorCode::kInvalid, "strategies must belong to different players");
  validate_strategy(other, inst);
  const auto op = path_process(other, inst);
  const bool smooth_is_p1 = m.base.owner() == Player::kOne;
  const ProcessTable& smooth_pay = smooth_is_p1 ? inst.f() : inst.g();
  const ProcessTable& other_pay = smooth_is_p1 ? inst.g() : inst.f();
  const int K = inst.terminal();

  Rational total = 0;
  for (int w = 0; w < inst.num_paths(); ++w) {
    const auto ws = static_cast<std::size_t>(w);
    const auto& x = m.values[ws];
    Rational acc = 0;
    for (int j = 0; j < K; ++j) {
      const auto js = static_cast<std::size_t>(j);
      const Rational& next = j + 1 < K ? x[js + 1] : m.left_at_terminal[ws];
      acc += smooth_pay(w, j) * (1 - op.cdf[ws][js]) * (next - x[js]);
      acc += other_pay(w, j) * (1 - x[js]) * op.mass[ws][js];
    }
    acc += inst.h()(w, K) * (1 - m.left_at_terminal[ws]) * op.mass[ws][static_cast<std::size_t>(K)];
    total += inst.prob(w) * acc;
  }
  return total;
}

namespace detail {

// sum_k f(1 - zeta_k) dxi_k + sum_{k<K} g(1 - xi_{k-}) dzeta_k + h_K dxi_K dzeta_K.
inline Rational limit_direct(const GameInstance& inst, const PathProcess& x, const PathProcess& z) {
  const int K = inst.terminal();
  Rational total = 0;
  for (int w = 0; w < inst.num_paths(); ++w) {
    const auto ws = static_cast<std::size_t>(w);
    Rational acc = 0;
    for (int k = 0; k <= K; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      acc += inst.f()(w, k) * (1 - z.cdf[ws][ks]) * x.mass[ws][ks];
      if (k < K) acc += inst.g()(w, k) * (1 - x.left(w, k)) * z.mass[ws][ks];
    }
    acc += inst.h()(w, K) * x.mass[ws][static_cast<std::size_t>(K)] * z.mass[ws][static_cast<std::size_t>(K)];
    total += inst.prob(w) * acc;
  }
  return total;
}

// E[sum_{k<K} (h_k - g_k) dxi_k dzeta_k].
inline Rational simultaneous_deficit(const GameInstance& inst, const PathProcess& x, const PathProcess& z) {
  Rational total = 0;
  for (int w = 0; w < inst.num_paths(); ++w) {
    const auto ws = static_cast<std::size_t>(w);
    for (int k = 0; k < inst.terminal(); ++k) {
      const auto ks = static_cast<std::size_t>(k);
      total += inst.prob(w) * (inst.h()(w, k) - inst.g()(w, k)) * x.mass[ws][ks] * z.mass[ws][ks];
    }
  }
  return total;
}

}  // namespace detail

/// Limit of N(xi^n, zeta) as n grows, computed directly and as N(xi, zeta)
/// minus the simultaneous-stop deficit; throws if the two disagree.
inline Rational mollified_limit(const GameInstance& inst, const BehavioralStrategy& xi, const BehavioralStrategy& zeta) {
  detail::check_owners(xi, zeta);
  const Rational full = expected_payoff(inst, xi, zeta);
  const auto x = path_process(xi, inst);
  const auto z = path_process(zeta, inst);
  const Rational direct = detail::limit_direct(inst, x, z);
  const Rational via_deficit = full - detail::simultaneous_deficit(inst, x, z);
  if (direct != via_deficit) {
    throw DynkinError(ErrorCode::kInternal, "mollified limit forms disagree: " + to_string(direct) + " vs " +
                                                to_string(via_deficit));
  }
  return direct;
}

}  // namespace dynkin

#endif  // DYNKIN_MOLLIFIER_HPP
