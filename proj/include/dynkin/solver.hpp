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

#ifndef DYNKIN_SOLVER_HPP
#define DYNKIN_SOLVER_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "dynkin/core.hpp"
#include "dynkin/lp.hpp"
#include "dynkin/payoff.hpp"

namespace dynkin {

inline constexpr std::int64_t kDefaultEnumerationCap = 50000;

// ---------------------------------------------------------------------------
// Best response

struct BestResponse {
  Rational value;
  PureStoppingTime time;
};

/// Optimal pure reply to a fixed randomised strategy, by backward induction
/// over the responder's atoms. Values are kept unnormalised (weighted by path
/// probability) so children add up without conditioning. Ties stop.
inline BestResponse best_response_value(const GameInstance& inst, const BehavioralStrategy& fixed, Player responder) {
  if (fixed.owner() == responder) {
    throw DynkinError(ErrorCode::kInvalid, "fixed strategy must belong to the responder's opponent");
  }
  validate_strategy(fixed, inst);
  const auto other = path_process(fixed, inst);
  const auto& fl = inst.filtration(responder);
  const int K = inst.terminal();
  const bool minimise = responder == Player::kOne;
  const ProcessTable& own = minimise ? inst.f() : inst.g();
  const ProcessTable& theirs = minimise ? inst.g() : inst.f();

  std::vector<std::vector<Rational>> value(static_cast<std::size_t>(K + 1));
  std::vector<std::vector<char>> stop(static_cast<std::size_t>(K + 1));
  std::vector<Rational> carry;  // sum of children's values per atom at k
  for (int k = K; k >= 0; --k) {
    const auto& part = fl.at(k);
    const auto ks = static_cast<std::size_t>(k);
    value[ks].assign(static_cast<std::size_t>(part.num_atoms()), Rational(0));
    stop[ks].assign(static_cast<std::size_t>(part.num_atoms()), 1);
    if (k < K) {
      carry.assign(static_cast<std::size_t>(part.num_atoms()), Rational(0));
      const auto& next = fl.at(k + 1);
      for (int b = 0; b < next.num_atoms(); ++b) {
        carry[static_cast<std::size_t>(part.atom_of(next.atom(b).front()))] += value[ks + 1][static_cast<std::size_t>(b)];
      }
    }
    for (int a = 0; a < part.num_atoms(); ++a) {
      Rational stop_value = 0;
      Rational cont_value = 0;
      for (int w : part.atom(a)) {
        const auto ws = static_cast<std::size_t>(w);
        const Rational& p = inst.prob(w);
        const Rational& d = other.mass[ws][ks];
        stop_value += p * (own(w, k) * (1 - other.cdf[ws][ks]) + inst.h()(w, k) * d);
        if (k < K && d != 0) cont_value += p * theirs(w, k) * d;
      }
      const auto as = static_cast<std::size_t>(a);
      if (k == K) {
        value[ks][as] = stop_value;
        continue;
      }
      cont_value += carry[as];
      const bool take_stop = minimise ? stop_value <= cont_value : stop_value >= cont_value;
      stop[ks][as] = take_stop ? 1 : 0;
      value[ks][as] = take_stop ? stop_value : cont_value;
    }
  }

  Rational root = 0;
  for (const auto& v : value[0]) root += v;
  std::vector<int> idx(static_cast<std::size_t>(inst.num_paths()), K);
  for (int w = 0; w < inst.num_paths(); ++w) {
    for (int k = 0; k <= K; ++k) {
      if (stop[static_cast<std::size_t>(k)][static_cast<std::size_t>(fl.at(k).atom_of(w))]) {
        idx[static_cast<std::size_t>(w)] = k;
        break;
      }
    }
  }
  return {root, PureStoppingTime(responder, std::move(idx), inst)};
}

// ---------------------------------------------------------------------------
// Enumeration of pure stopping times

namespace detail {

// Number of pure rules below atom (k, a), saturating at cap + 1.
inline std::int64_t count_rules(const Filtration& fl, int k, int a, int K, std::int64_t cap,
                                std::vector<std::vector<std::int64_t>>& memo) {
  auto& slot = memo[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)];
  if (slot >= 0) return slot;
  std::int64_t total = 1;
  if (k < K) {
    std::int64_t product = 1;
    for (int b : fl.children(k, a)) {
      product *= count_rules(fl, k + 1, b, K, cap, memo);
      if (product > cap) {
        product = cap + 1;
        break;
      }
    }
    total = std::min<std::int64_t>(cap + 1, 1 + product);
  }
  slot = total;
  return total;
}

using PartialRule = std::vector<std::pair<int, int>>;  // (path, stop index)

inline std::vector<PartialRule> rules_below(const Filtration& fl, int k, int a, int K) {
  std::vector<PartialRule> out;
  PartialRule stop_now;
  for (int w : fl.at(k).atom(a)) stop_now.emplace_back(w, k);
  out.push_back(std::move(stop_now));
  if (k == K) return out;
  std::vector<PartialRule> combos{PartialRule{}};
  for (int b : fl.children(k, a)) {
    const auto sub = rules_below(fl, k + 1, b, K);
    std::vector<PartialRule> next;
    next.reserve(combos.size() * sub.size());
    for (const auto& c : combos) {
      for (const auto& s : sub) {
        PartialRule merged = c;
        merged.insert(merged.end(), s.begin(), s.end());
        next.push_back(std::move(merged));
      }
    }
    combos = std::move(next);
  }
  out.insert(out.end(), std::make_move_iterator(combos.begin()), std::make_move_iterator(combos.end()));
  return out;
}

}  // namespace detail

/// Number of distinct pure stopping times for a player, saturating at cap + 1.
inline std::int64_t count_pure(const GameInstance& inst, Player player, std::int64_t cap = kDefaultEnumerationCap) {
  const auto& fl = inst.filtration(player);
  const int K = inst.terminal();
  std::vector<std::vector<std::int64_t>> memo;
  for (int k = 0; k <= K; ++k) memo.emplace_back(static_cast<std::size_t>(fl.at(k).num_atoms()), -1);
  std::int64_t product = 1;
  for (int a = 0; a < fl.at(0).num_atoms(); ++a) {
    product *= detail::count_rules(fl, 0, a, K, cap, memo);
    if (product > cap) return cap + 1;
  }
  return product;
}

/// Every pure adapted stopping time of `player`, stop-first lexicographic
/// order over (time, atom) decisions. Throws kInfeasibleSize above `cap`.
inline std::vector<PureStoppingTime> enumerate_pure(const GameInstance& inst, Player player,
                                                    std::int64_t cap = kDefaultEnumerationCap) {
  require_playable(inst);
  const std::int64_t count = count_pure(inst, player, cap);
  if (count > cap) {
    throw DynkinError(ErrorCode::kInfeasibleSize,
                      "player " + std::to_string(player_number(player)) + " has more than " + std::to_string(cap) +
                          " pure stopping times; too large, use fictitious_play");
  }
  const auto& fl = inst.filtration(player);
  const int K = inst.terminal();
  std::vector<detail::PartialRule> combos{detail::PartialRule{}};
  for (int a = 0; a < fl.at(0).num_atoms(); ++a) {
    const auto sub = detail::rules_below(fl, 0, a, K);
    std::vector<detail::PartialRule> next;
    for (const auto& c : combos) {
      for (const auto& s : sub) {
        auto merged = c;
        merged.insert(merged.end(), s.begin(), s.end());
        next.push_back(std::move(merged));
      }
    }
    combos = std::move(next);
  }
  std::vector<PureStoppingTime> out;
  out.reserve(combos.size());
  for (const auto& rule : combos) {
    std::vector<int> idx(static_cast<std::size_t>(inst.num_paths()), -1);
    for (auto [w, k] : rule) idx[static_cast<std::size_t>(w)] = k;
    out.emplace_back(player, std::move(idx), inst);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matrix game

enum class StrategyClass { kPure, kRandomised };

inline const char* to_string(StrategyClass c) { return c == StrategyClass::kPure ? "pure" : "randomised"; }

struct SaddleCertificate {
  Rational best_response_p1;  // inf over tau of N(tau, zeta*), by backward induction
  Rational best_response_p2;  // sup over sigma of N(xi*, sigma)
  Rational max_row_deviation;  // max over enumerated sigma of N(xi*, sigma)
  Rational min_col_deviation;  // min over enumerated tau of N(tau, zeta*)
  std::int64_t p1_deviations_checked = 0;
  std::int64_t p2_deviations_checked = 0;
  bool holds = false;
};

struct GameValueReport {
  Rational lower_value;
  Rational upper_value;
  Rational gap;
  MixedStrategy optimal_p1_mixed;
  MixedStrategy optimal_p2_mixed;
  BehavioralStrategy optimal_p1;
  BehavioralStrategy optimal_p2;
  SaddleCertificate certificate;
  StrategyClass class_p1 = StrategyClass::kRandomised;
  StrategyClass class_p2 = StrategyClass::kRandomised;
  std::int64_t num_pure_p1 = 0;
  std::int64_t num_pure_p2 = 0;
  int lp_pivots = 0;

  const Rational& value() const { return lower_value; }
};

struct SolveOptions {
  std::int64_t cap = kDefaultEnumerationCap;
  unsigned threads = 1;
};

/// Pure-vs-pure payoff matrix: rows are player one's rules, columns player two's.
inline Matrix payoff_matrix(const GameInstance& inst, const std::vector<PureStoppingTime>& rows,
                            const std::vector<PureStoppingTime>& cols, unsigned threads = 1) {
  Matrix M(rows.size(), std::vector<Rational>(cols.size()));
  auto fill = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < rows.size(); i += step) {
      for (std::size_t j = 0; j < cols.size(); ++j) M[i][j] = pure_payoff(inst, rows[i], cols[j]);
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    fill(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(fill, t, threads);
    for (auto& th : pool) th.join();
  }
  return M;
}

namespace detail {

inline MixedStrategy mixed_from_weights(Player owner, const std::vector<PureStoppingTime>& pures,
                                        const std::vector<Rational>& weights) {
  std::vector<WeightedPure> support;
  for (std::size_t i = 0; i < pures.size(); ++i) {
    if (sgn(weights[i]) > 0) support.push_back({pures[i], weights[i]});
  }
  return MixedStrategy(owner, std::move(support));
}

}  // namespace detail

/// Exact value and optimal strategies by enumerating both players' pure
/// stopping times and solving the matrix game. The saddle certificate is
/// checked against every enumerated deviation and, independently, against
/// the backward-induction best responses.
inline GameValueReport solve_matrix_game(const GameInstance& inst, const SolveOptions& options = {}) {
  const auto rows = enumerate_pure(inst, Player::kOne, options.cap);
  const auto cols = enumerate_pure(inst, Player::kTwo, options.cap);
  const Matrix M = payoff_matrix(inst, rows, cols, options.threads);
  const auto sol = solve_matrix_game_lp(M);

  GameValueReport r;
  r.num_pure_p1 = static_cast<std::int64_t>(rows.size());
  r.num_pure_p2 = static_cast<std::int64_t>(cols.size());
  r.lp_pivots = sol.pivots;
  r.optimal_p1_mixed = detail::mixed_from_weights(Player::kOne, rows, sol.row_strategy);
  r.optimal_p2_mixed = detail::mixed_from_weights(Player::kTwo, cols, sol.col_strategy);
  r.optimal_p1 = behavioral_from_mixed(r.optimal_p1_mixed, inst);
  r.optimal_p2 = behavioral_from_mixed(r.optimal_p2_mixed, inst);

  // What each optimal strategy guarantees against every pure deviation.
  Rational max_over_cols;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    Rational v = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (sgn(sol.row_strategy[i]) != 0) v += sol.row_strategy[i] * M[i][j];
    }
    if (j == 0 || v > max_over_cols) max_over_cols = v;
  }
  Rational min_over_rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Rational v = 0;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (sgn(sol.col_strategy[j]) != 0) v += sol.col_strategy[j] * M[i][j];
    }
    if (i == 0 || v < min_over_rows) min_over_rows = v;
  }

  auto& cert = r.certificate;
  cert.max_row_deviation = max_over_cols;
  cert.min_col_deviation = min_over_rows;
  cert.p1_deviations_checked = r.num_pure_p1;
  cert.p2_deviations_checked = r.num_pure_p2;
  cert.best_response_p1 = best_response_value(inst, r.optimal_p2, Player::kOne).value;
  cert.best_response_p2 = best_response_value(inst, r.optimal_p1, Player::kTwo).value;

  r.lower_value = min_over_rows;
  r.upper_value = max_over_cols;
  r.gap = r.upper_value - r.lower_value;
  cert.holds = r.gap == 0 && r.lower_value == sol.value && cert.best_response_p1 == r.lower_value &&
               cert.best_response_p2 == r.upper_value;
  if (!cert.holds) {
    throw DynkinError(ErrorCode::kInternal, "saddle certificate failed: lower " + to_string(r.lower_value) +
                                                ", upper " + to_string(r.upper_value) + ", lp " +
                                                to_string(sol.value));
  }

  // A player is "pure" when one of their pure rules already guarantees the value.
  const auto row_attains = [&](std::size_t i) {
    return std::all_of(M[i].begin(), M[i].end(), [&](const Rational& v) { return v <= r.lower_value; });
  };
  const auto col_attains = [&](std::size_t j) {
    return std::all_of(M.begin(), M.end(), [&](const auto& row) { return row[j] >= r.lower_value; });
  };
  for (std::size_t i = 0; i < rows.size() && r.class_p1 != StrategyClass::kPure; ++i) {
    if (row_attains(i)) r.class_p1 = StrategyClass::kPure;
  }
  for (std::size_t j = 0; j < cols.size() && r.class_p2 != StrategyClass::kPure; ++j) {
    if (col_attains(j)) r.class_p2 = StrategyClass::kPure;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Restricted strategy classes

struct RestrictedValue {
  Rational value;
  std::optional<PureStoppingTime> outer_choice;  // set when the outer class is pure
};

/// sup-inf (outer = player two) or inf-sup (outer = player one) with the outer
/// player limited to `outer_class`. The inner optimisation is always over pure
/// rules: against a fixed outer strategy a pure reply is optimal, so
/// `inner_class` does not change the result.
inline RestrictedValue restricted_value(const GameInstance& inst, Player outer, StrategyClass outer_class,
                                        StrategyClass inner_class = StrategyClass::kPure,
                                        std::int64_t cap = kDefaultEnumerationCap) {
  (void)inner_class;
  const Player inner = opponent(outer);
  if (outer_class == StrategyClass::kRandomised) {
    return {solve_matrix_game(inst, {cap, 1}).lower_value, std::nullopt};
  }
  const auto outer_rules = enumerate_pure(inst, outer, cap);
  const auto inner_rules = enumerate_pure(inst, inner, cap);
  RestrictedValue best{0, std::nullopt};
  for (const auto& o : outer_rules) {
    std::optional<Rational> worst;
    for (const auto& in : inner_rules) {
      const Rational v = outer == Player::kTwo ? pure_payoff(inst, in, o) : pure_payoff(inst, o, in);
      if (!worst || (outer == Player::kTwo ? v < *worst : v > *worst)) worst = v;
    }
    if (!best.outer_choice || (outer == Player::kTwo ? *worst > best.value : *worst < best.value)) {
      best.value = *worst;
      best.outer_choice = o;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Fictitious play

enum class Schedule { kAlternating, kSimultaneous };

struct FictitiousPlayResult {
  Rational lower;  // best certified lower bound, inf_tau N(tau, zeta_avg)
  Rational upper;  // best certified upper bound, sup_sigma N(xi_avg, sigma)
  BehavioralStrategy average_p1;
  BehavioralStrategy average_p2;
  BehavioralStrategy best_p1;  // average strategy that attained `upper`
  BehavioralStrategy best_p2;  // average strategy that attained `lower`
  int iterations = 0;
  bool converged = false;  // lower == upper within the budget
};

namespace detail {

/// Integer stop counts per (k, atom); the average strategy is counts / total.
struct StopCounts {
  Player owner;
  std::vector<std::vector<long>> counts;
  long total = 0;

  StopCounts(Player p, const GameInstance& inst) : owner(p) {
    const auto& fl = inst.filtration(p);
    for (int k = 0; k <= inst.terminal(); ++k) counts.emplace_back(static_cast<std::size_t>(fl.at(k).num_atoms()), 0);
  }

  void add(const PureStoppingTime& t, const GameInstance& inst) {
    const auto& fl = inst.filtration(owner);
    for (int k = 0; k <= inst.terminal(); ++k) {
      for (int a = 0; a < fl.at(k).num_atoms(); ++a) {
        if (t.at(fl.at(k).atom(a).front()) == k) ++counts[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)];
      }
    }
    ++total;
  }

  BehavioralStrategy average() const {
    std::vector<std::vector<Rational>> inc;
    for (const auto& row : counts) {
      std::vector<Rational> r;
      for (long c : row) r.push_back(rational(c, total));
      inc.push_back(std::move(r));
    }
    return BehavioralStrategy(owner, std::move(inc));
  }
};

}  // namespace detail

/// Fictitious play with uniform averaging. Both players start from "stop
/// immediately". Each bound is a true best-response value against an
/// implementable average strategy, so lower <= value <= upper always holds.
inline FictitiousPlayResult fictitious_play(const GameInstance& inst, int iterations,
                                            Schedule schedule = Schedule::kAlternating) {
  require_playable(inst);
  detail::StopCounts c1(Player::kOne, inst);
  detail::StopCounts c2(Player::kTwo, inst);
  c1.add(PureStoppingTime::constant(Player::kOne, 0, inst), inst);
  c2.add(PureStoppingTime::constant(Player::kTwo, 0, inst), inst);

  FictitiousPlayResult out;
  bool have_bounds = false;
  for (int it = 1; it <= iterations; ++it) {
    const auto avg2 = c2.average();
    const auto br1 = best_response_value(inst, avg2, Player::kOne);
    std::optional<BestResponse> br2;
    BehavioralStrategy avg1;
    if (schedule == Schedule::kSimultaneous) {
      avg1 = c1.average();
      br2 = best_response_value(inst, avg1, Player::kTwo);
      c1.add(br1.time, inst);
    } else {
      c1.add(br1.time, inst);
      avg1 = c1.average();
      br2 = best_response_value(inst, avg1, Player::kTwo);
    }
    c2.add(br2->time, inst);

    if (!have_bounds || br1.value > out.lower) {
      out.lower = br1.value;
      out.best_p2 = avg2;
    }
    if (!have_bounds || br2->value < out.upper) {
      out.upper = br2->value;
      out.best_p1 = avg1;
    }
    have_bounds = true;
    out.iterations = it;
    if (out.lower == out.upper) {
      out.converged = true;
      break;
    }
  }
  out.average_p1 = c1.average();
  out.average_p2 = c2.average();
  return out;
}

// ---------------------------------------------------------------------------
// Conditional games

struct AtomValue {
  int atom = 0;
  Rational probability;
  GameValueReport report;
};

struct ConditionalValues {
  std::vector<AtomValue> atoms;
  Rational aggregate;  // sum of probability * value over atoms
  GameValueReport overall;
  BehavioralStrategy glued_p1;
  BehavioralStrategy glued_p2;
  Rational glued_best_response_p1;  // inf_tau N(tau, glued_p2)
  Rational glued_best_response_p2;  // sup_sigma N(glued_p1, sigma)
  bool consistent = false;
};

namespace detail {

inline BehavioralStrategy glue(Player owner, const GameInstance& inst, const std::vector<RestrictedInstance>& parts,
                               const std::vector<BehavioralStrategy>& local, const std::vector<int>& part_of_path,
                               const std::vector<int>& local_index) {
  const auto& fl = inst.filtration(owner);
  std::vector<std::vector<Rational>> inc;
  for (int k = 0; k <= inst.terminal(); ++k) {
    std::vector<Rational> row;
    for (int a = 0; a < fl.at(k).num_atoms(); ++a) {
      const int w = fl.at(k).atom(a).front();
      const auto p = static_cast<std::size_t>(part_of_path[static_cast<std::size_t>(w)]);
      const int la = parts[p].instance.filtration(owner).at(k).atom_of(local_index[static_cast<std::size_t>(w)]);
      row.push_back(local[p].increment(k, la));
    }
    inc.push_back(std::move(row));
  }
  return BehavioralStrategy(owner, std::move(inc));
}

}  // namespace detail

/// Solves the game conditioned on each atom of the initial partition and
/// checks that the probability-weighted conditional values add up to the
/// unconditional value, and that the glued per-atom optima form a saddle.
inline ConditionalValues conditional_values(const GameInstance& inst, const SolveOptions& options = {}) {
  if (!inst.initial_partition()) throw DynkinError(ErrorCode::kInvalid, "instance has no initial partition");
  const auto report = validate_instance(inst);
  if (!report.passed(check_names::kInitialCoarse)) {
    throw DynkinError(ErrorCode::kValidation, "initial partition must be coarser than both players' time-0 partitions");
  }
  const auto& g0 = *inst.initial_partition();
  ConditionalValues out;
  out.overall = solve_matrix_game(inst, options);

  std::vector<RestrictedInstance> parts;
  std::vector<int> part_of(static_cast<std::size_t>(inst.num_paths()));
  std::vector<int> local_index(static_cast<std::size_t>(inst.num_paths()));
  std::vector<BehavioralStrategy> local1;
  std::vector<BehavioralStrategy> local2;
  out.aggregate = 0;
  for (int a = 0; a < g0.num_atoms(); ++a) {
    parts.push_back(restrict_to_paths(inst, g0.atom(a)));
    for (std::size_t i = 0; i < g0.atom(a).size(); ++i) {
      part_of[static_cast<std::size_t>(g0.atom(a)[i])] = a;
      local_index[static_cast<std::size_t>(g0.atom(a)[i])] = static_cast<int>(i);
    }
    AtomValue av{a, initial_atom_probability(inst, a), solve_matrix_game(parts.back().instance, options)};
    out.aggregate += av.probability * av.report.lower_value;
    local1.push_back(av.report.optimal_p1);
    local2.push_back(av.report.optimal_p2);
    out.atoms.push_back(std::move(av));
  }
  out.glued_p1 = detail::glue(Player::kOne, inst, parts, local1, part_of, local_index);
  out.glued_p2 = detail::glue(Player::kTwo, inst, parts, local2, part_of, local_index);
  out.glued_best_response_p1 = best_response_value(inst, out.glued_p2, Player::kOne).value;
  out.glued_best_response_p2 = best_response_value(inst, out.glued_p1, Player::kTwo).value;
  const Rational& v = out.overall.lower_value;
  out.consistent = out.aggregate == v && out.glued_best_response_p1 == v && out.glued_best_response_p2 == v;
  return out;
}

}  // namespace dynkin

#endif  // DYNKIN_SOLVER_HPP
