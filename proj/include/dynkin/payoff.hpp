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

// Expected payoff of a pair of randomised stopping times. Two independent
// routes are provided: the singular-control form, which only needs each
// strategy's CDF along a path, and the joint-law form, which sums the
// pathwise payoff over every (tau, sigma) index pair weighted by the product
// of the two independent devices' masses.

#ifndef DYNKIN_PAYOFF_HPP
#define DYNKIN_PAYOFF_HPP

#include <vector>

#include "dynkin/core.hpp"

namespace dynkin {

/// f_{k_tau} if tau stops first, g_{k_sigma} if sigma stops first, h on ties.
inline const Rational& pathwise_payoff(const GameInstance& inst, int k_tau, int k_sigma, int path) {
  const int K = inst.terminal();
  if (k_tau < 0 || k_tau > K || k_sigma < 0 || k_sigma > K) {
    throw DynkinError(ErrorCode::kInvalid, "stopping index out of range");
  }
  if (path < 0 || path >= inst.num_paths()) throw DynkinError(ErrorCode::kInvalid, "path out of range");
  if (k_tau < k_sigma) return inst.f()(path, k_tau);
  if (k_sigma < k_tau) return inst.g()(path, k_sigma);
  return inst.h()(path, k_tau);
}

namespace detail {

inline void check_owners(const BehavioralStrategy& xi, const BehavioralStrategy& zeta) {
  if (xi.owner() != Player::kOne || zeta.owner() != Player::kTwo) {
    throw DynkinError(ErrorCode::kInvalid, "expected (player 1, player 2) strategies");
  }
}

/// sum_k f_k (1 - zeta_k) dxi_k + g_k (1 - xi_k) dzeta_k + h_k dxi_k dzeta_k on one path.
inline Rational control_form_on_path(const GameInstance& inst, const PathProcess& x, const PathProcess& z, int w) {
  const auto ws = static_cast<std::size_t>(w);
  Rational acc = 0;
  for (int k = 0; k <= inst.terminal(); ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const Rational& dx = x.mass[ws][ks];
    const Rational& dz = z.mass[ws][ks];
    if (dx != 0) acc += inst.f()(w, k) * (1 - z.cdf[ws][ks]) * dx;
    if (dz != 0) acc += inst.g()(w, k) * (1 - x.cdf[ws][ks]) * dz;
    if (dx != 0 && dz != 0) acc += inst.h()(w, k) * dx * dz;
  }
  return acc;
}

inline Rational joint_law_on_path(const GameInstance& inst, const PathProcess& x, const PathProcess& z, int w) {
  const auto ws = static_cast<std::size_t>(w);
  Rational acc = 0;
  for (int k = 0; k <= inst.terminal(); ++k) {
    const Rational& dx = x.mass[ws][static_cast<std::size_t>(k)];
    if (dx == 0) continue;
    for (int l = 0; l <= inst.terminal(); ++l) {
      const Rational& dz = z.mass[ws][static_cast<std::size_t>(l)];
      if (dz == 0) continue;
      acc += dx * dz * pathwise_payoff(inst, k, l, w);
    }
  }
  return acc;
}

}  // namespace detail

/// N(xi, zeta) via the control reformulation. The f- and g-terms at the
/// terminal index vanish because both CDFs equal 1 there.
inline Rational expected_payoff(const GameInstance& inst, const BehavioralStrategy& xi,
                                const BehavioralStrategy& zeta) {
  detail::check_owners(xi, zeta);
  validate_strategy(xi, inst);
  validate_strategy(zeta, inst);
  const auto x = path_process(xi, inst);
  const auto z = path_process(zeta, inst);
  Rational total = 0;
  for (int w = 0; w < inst.num_paths(); ++w) total += inst.prob(w) * detail::control_form_on_path(inst, x, z, w);
  return total;
}

/// N(xi, zeta) by enumerating the joint law of (tau, sigma) given the path.
inline Rational expected_payoff_by_joint_law(const GameInstance& inst, const BehavioralStrategy& xi,
                                             const BehavioralStrategy& zeta) {
  detail::check_owners(xi, zeta);
  validate_strategy(xi, inst);
  validate_strategy(zeta, inst);
  const auto x = path_process(xi, inst);
  const auto z = path_process(zeta, inst);
  Rational total = 0;
  for (int w = 0; w < inst.num_paths(); ++w) total += inst.prob(w) * detail::joint_law_on_path(inst, x, z, w);
  return total;
}

/// E[P(tau, sigma)] for two pure stopping times.
inline Rational pure_payoff(const GameInstance& inst, const PureStoppingTime& tau, const PureStoppingTime& sigma) {
  if (tau.owner() != Player::kOne || sigma.owner() != Player::kTwo) {
    throw DynkinError(ErrorCode::kInvalid, "expected (player 1, player 2) stopping times");
  }
  Rational total = 0;
  for (int w = 0; w < inst.num_paths(); ++w) total += inst.prob(w) * pathwise_payoff(inst, tau.at(w), sigma.at(w), w);
  return total;
}

/// E[P | atom of the initial partition], probabilities renormalised on the atom.
inline Rational conditional_payoff(const GameInstance& inst, const BehavioralStrategy& xi,
                                   const BehavioralStrategy& zeta, int atom) {
  detail::check_owners(xi, zeta);
  if (!inst.initial_partition()) throw DynkinError(ErrorCode::kInvalid, "instance has no initial partition");
  const auto& g0 = *inst.initial_partition();
  if (atom < 0 || atom >= g0.num_atoms()) throw DynkinError(ErrorCode::kInvalid, "atom not in initial partition");
  validate_strategy(xi, inst);
  validate_strategy(zeta, inst);
  const auto x = path_process(xi, inst);
  const auto z = path_process(zeta, inst);
  Rational mass = 0;
  Rational total = 0;
  for (int w : g0.atom(atom)) {
    mass += inst.prob(w);
    total += inst.prob(w) * detail::control_form_on_path(inst, x, z, w);
  }
  if (mass <= 0) throw DynkinError(ErrorCode::kInvalid, "atom has zero probability");
  return total / mass;
}

/// Probability of an atom of the initial partition.
inline Rational initial_atom_probability(const GameInstance& inst, int atom) {
  if (!inst.initial_partition()) throw DynkinError(ErrorCode::kInvalid, "instance has no initial partition");
  Rational mass = 0;
  for (int w : inst.initial_partition()->atom(atom)) mass += inst.prob(w);
  return mass;
}

/// Increment-wise convex combination a*x + (1-a)*y of two strategies of one owner.
inline BehavioralStrategy mix(const Rational& a, const BehavioralStrategy& x, const BehavioralStrategy& y) {
  if (x.owner() != y.owner() || x.num_times() != y.num_times()) {
    throw DynkinError(ErrorCode::kInvalid, "cannot mix strategies of different shape");
  }
  auto inc = x.increments();
  for (std::size_t k = 0; k < inc.size(); ++k) {
    for (std::size_t i = 0; i < inc[k].size(); ++i) inc[k][i] = a * inc[k][i] + (1 - a) * y.increments()[k][i];
  }
  return BehavioralStrategy(x.owner(), std::move(inc));
}

}  // namespace dynkin

#endif  // DYNKIN_PAYOFF_HPP
