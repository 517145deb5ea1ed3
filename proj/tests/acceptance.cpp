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


// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "dynkin/dynkin.hpp"
#include "support.hpp"

namespace dynkin {
namespace {

struct Verdict {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (passed) detail << "first failure: " << what << "; ";
      passed = false;
    }
  }
};

// --- 1 ----------------------------------------------------------------------
Verdict anchor_payoffs() {
  Verdict v;
  const auto inst = counterexample(Counterexample::kUninformed, 10);
  const int K = inst.terminal();
  const auto xi10 = behavioral_from_pure(informed_time(inst, K, 0), inst);
  const auto xi11 = behavioral_from_pure(informed_time(inst, K, K), inst);
  for (const Rational& a : {Rational(0), rational(1, 7), rational(2, 7), rational(1, 2), Rational(1)}) {
    const auto zeta = uninformed_zeta_a(inst, a);
    v.require(expected_payoff(inst, xi10, zeta) == 2 + 3 * a / 4, "N((1,0), zeta_a) at a = " + to_string(a));
    v.require(expected_payoff(inst, xi11, zeta) == rational(5, 2) - a, "N((1,1), zeta_a) at a = " + to_string(a));
  }
  const auto z = uninformed_zeta_a(inst, rational(2, 7));
  v.require(expected_payoff(inst, xi10, z) == rational(31, 14) && expected_payoff(inst, xi11, z) == rational(31, 14),
            "both anchors equal 31/14 at a = 2/7");
  v.detail << "5 values of a, both anchors 31/14 at a = 2/7";
  return v;
}

// --- 2 ----------------------------------------------------------------------
Verdict value_separation() {
  Verdict v;
  const auto inst = counterexample(Counterexample::kUninformed, 10);
  const int K = inst.terminal();
  const auto pure = restricted_value(inst, Player::kTwo, StrategyClass::kPure);
  Rational sup;
  for (int s = 0; s <= K; ++s) {
    const Rational p = pure_payoff(inst, uninformed_tau_hat(inst, s), PureStoppingTime::constant(Player::kTwo, s, inst));
    if (s == 0 || p > sup) sup = p;
  }
  const auto solved = solve_matrix_game(inst);
  v.require(pure.value <= 2, "pure-outer value <= 2");
  v.require(sup == 2, "tau-hat certificate equals 2");
  v.require(solved.value() >= rational(31, 14), "value >= 31/14");
  v.require(solved.value() - pure.value >= rational(3, 14), "gap >= 3/14");
  v.detail << "pure-outer " << to_string(pure.value) << ", tau-hat sup " << to_string(sup) << ", value "
           << to_string(solved.value()) << ", gap " << to_string(solved.value() - pure.value);
  return v;
}

// --- 3 ----------------------------------------------------------------------
Verdict order_bounds() {
  Verdict v;
  for (int K : {10, 20, 40}) {
    const auto r = reproduce_order(K);
    for (const auto& c : r.checks) v.require(c.passed, "K=" + std::to_string(K) + " " + c.name + " " + c.detail);
    v.detail << "K=" << K << " value " << to_string(r.solution.value());
    for (const auto& c : r.checks) {
      if (c.name == "upper_bound_per_zeta" || c.name == "lower_bound_per_xi") v.detail << ", " << c.name << " (" << c.detail << ")";
    }
    for (const auto& n : r.notes) {
      if (n.rfind("continuous-limit", 0) == 0) v.detail << ", " << n.substr(0, n.find(';'));
    }
    v.detail << "; ";
  }
  return v;
}

// --- 4 ----------------------------------------------------------------------
Verdict jump_bounds() {
  Verdict v;
  for (int K : {10, 20}) {
    const auto r = reproduce_jumps(K);
    for (const auto& c : r.checks) v.require(c.passed, "K=" + std::to_string(K) + " " + c.name + " " + c.detail);
    v.detail << "K=" << K << " value " << to_string(r.solution.value());
    for (const auto& c : r.checks) {
      if (c.name == "upper_bound_zero" || c.name == "jump_condition_flagged") v.detail << ", " << c.detail;
    }
    v.detail << "; ";
  }
  return v;
}

// --- 5 ----------------------------------------------------------------------
Verdict oracle_equivalence() {
  Verdict v;
  testing::Rng rng(5005);
  const int trials = 250;
  for (int t = 0; t < trials; ++t) {
    const auto inst = testing::random_instance(rng);
    const auto xi = testing::random_strategy(rng, inst, Player::kOne);
    const auto zeta = testing::random_strategy(rng, inst, Player::kTwo);
    v.require(expected_payoff(inst, xi, zeta) == expected_payoff_by_joint_law(inst, xi, zeta),
              "payoff forms differ on instance " + std::to_string(t));

    std::optional<Rational> lo;
    for (const auto& idx : testing::brute_force_stopping_maps(inst, Player::kOne)) {
      const Rational p = expected_payoff_by_joint_law(inst, behavioral_from_pure(PureStoppingTime(Player::kOne, idx, inst), inst), zeta);
      if (!lo || p < *lo) lo = p;
    }
    std::optional<Rational> hi;
    for (const auto& idx : testing::brute_force_stopping_maps(inst, Player::kTwo)) {
      const Rational p = expected_payoff_by_joint_law(inst, xi, behavioral_from_pure(PureStoppingTime(Player::kTwo, idx, inst), inst));
      if (!hi || p > *hi) hi = p;
    }
    v.require(best_response_value(inst, zeta, Player::kOne).value == *lo, "player-1 best response on " + std::to_string(t));
    v.require(best_response_value(inst, xi, Player::kTwo).value == *hi, "player-2 best response on " + std::to_string(t));
  }
  v.detail << trials << " random instances, zero tolerance";
  return v;
}

// --- 6 ----------------------------------------------------------------------
Verdict lp_soundness() {
  Verdict v;
  testing::Rng rng(6006);
  const int solved = 120;
  for (int t = 0; t < solved; ++t) {
    const auto inst = testing::random_instance(rng);
    const auto r = solve_matrix_game(inst);
    v.require(r.gap == 0 && r.certificate.holds, "duality gap on " + std::to_string(t));
    // Re-check every pure deviation through the joint-law evaluator.
    for (const auto& tau : enumerate_pure(inst, Player::kOne)) {
      v.require(expected_payoff_by_joint_law(inst, behavioral_from_pure(tau, inst), r.optimal_p2) >= r.value(),
                "player-1 deviation beats the value on " + std::to_string(t));
    }
    for (const auto& sigma : enumerate_pure(inst, Player::kTwo)) {
      v.require(expected_payoff_by_joint_law(inst, r.optimal_p1, behavioral_from_pure(sigma, inst)) <= r.value(),
                "player-2 deviation beats the value on " + std::to_string(t));
    }
  }
  const int fp_instances = 25;
  for (int t = 0; t < fp_instances; ++t) {
    const auto inst = testing::random_instance(rng);
    const auto value = solve_matrix_game(inst).value();
    const auto fp = fictitious_play(inst, 200);
    v.require(fp.lower <= value && value <= fp.upper, "fictitious-play bracket on " + std::to_string(t));
  }
  v.detail << solved << " LP solves with all deviations rechecked; " << fp_instances << " fictitious-play brackets";
  return v;
}

// --- 7 ----------------------------------------------------------------------
Verdict mollifier_exactness() {
  Verdict v;
  testing::Rng rng(7007);
  const int general = 60;
  for (int t = 0; t < general; ++t) {
    const auto inst = testing::random_instance(rng);
    const auto xi = testing::random_strategy(rng, inst, Player::kOne);
    const auto zeta = testing::random_strategy(rng, inst, Player::kTwo);
    const long sat = saturation_n(inst.grid());
    const auto m = mollify(xi, inst, sat);
    const auto proc = path_process(xi, inst);
    for (int w = 0; w < inst.num_paths(); ++w) {
      for (int k = 0; k < inst.terminal(); ++k) {
        v.require(m.values[static_cast<std::size_t>(w)][static_cast<std::size_t>(k)] == proc.left(w, k), "shifted CDF");
      }
      v.require(m.left_at_terminal[static_cast<std::size_t>(w)] == proc.left(w, inst.terminal()), "left limit at T");
    }
    v.require(mollified_payoff(inst, m, zeta) == mollified_limit(inst, xi, zeta), "payoff at saturation");
  }
  testing::InstanceOptions ordered;
  ordered.ordered = true;
  const int a3 = 150;
  for (int t = 0; t < a3; ++t) {
    const auto inst = testing::random_instance(rng, ordered);
    const auto xi = testing::random_strategy(rng, inst, Player::kOne);
    const auto zeta = testing::random_strategy(rng, inst, Player::kTwo);
    v.require(mollified_limit(inst, xi, zeta) <= expected_payoff(inst, xi, zeta), "limit above N under f >= h >= g");
    v.require(mollified_payoff(inst, mollify(xi, inst, saturation_n(inst.grid())), zeta) <= expected_payoff(inst, xi, zeta),
              "saturated payoff above N under f >= h >= g");
  }
  v.detail << general << " saturation checks, " << a3 << " ordered instances";
  return v;
}

// --- 8 ----------------------------------------------------------------------
Verdict conditional_consistency() {
  Verdict v;
  testing::Rng rng(8008);
  testing::InstanceOptions opt;
  opt.with_initial = true;
  opt.min_paths = 2;
  int nontrivial = 0;
  int attempts = 0;
  while (nontrivial < 30 && attempts < 2000) {
    ++attempts;
    const auto inst = testing::random_instance(rng, opt);
    if (inst.initial_partition()->num_atoms() < 2) continue;
    ++nontrivial;
    const auto cv = conditional_values(inst);
    v.require(cv.aggregate == cv.overall.value(), "aggregate differs from the value");
    v.require(cv.glued_best_response_p1 == cv.overall.value() && cv.glued_best_response_p2 == cv.overall.value(),
              "glued strategies fail the saddle certificate");
  }
  v.require(nontrivial >= 20, "not enough instances with a nontrivial initial partition");
  v.detail << nontrivial << " instances with a nontrivial initial partition";
  return v;
}

// --- 9 ----------------------------------------------------------------------
RandomHorizonSpec horizon_spec(testing::Rng& rng) {
  RandomHorizonSpec s;
  const int K = rng.uniform(2, 3);
  std::vector<Rational> t;
  for (int k = 0; k <= K; ++k) t.push_back(rational(k, K));
  s.grid = TimeGrid(t);
  const int n = rng.uniform(1, 2);
  for (int c = 0; c < n; ++c) s.probs.push_back(rational(1, n));
  s.base = Filtration(std::vector<Partition>(static_cast<std::size_t>(K + 1), Partition::discrete(n)));
  auto table = [&](int lo) {
    std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(n));
    for (auto& r : rows) {
      for (int k = 0; k <= K; ++k) r.push_back(rational(rng.uniform(lo, 6), rng.uniform(1, 2)));
    }
    return ProcessTable(std::move(rows));
  };
  s.f0 = table(0);
  s.g0 = table(-6);
  s.h0 = table(-6);
  const int points = rng.uniform(1, 2);
  for (int p = 0; p < points; ++p) {
    // Strictly between two grid points, offset so distinct points never collide.
    const int cell = rng.uniform(0, K - 1);
    s.horizon.push_back({rational(cell, K) + rational(1, K * (3 + p)), rational(1, points)});
  }
  return s;
}

Verdict random_horizon() {
  Verdict v;
  testing::Rng rng(9009);
  const int specs = 15;
  int pairs = 0;
  for (int t = 0; t < specs; ++t) {
    auto spec = horizon_spec(rng);
    for (const Rational& eps : {rational(1, 50), rational(1, 5), Rational(1)}) {
      spec.epsilon = eps;
      const auto pair = build_random_horizon_pair(spec);
      v.require(solve_matrix_game(pair.killed).value() == solve_matrix_game(pair.shifted).value(),
                "values differ on spec " + std::to_string(t) + " eps " + to_string(eps));
      for (const auto& tau : enumerate_pure(pair.killed, Player::kOne)) {
        for (const auto& sigma : enumerate_pure(pair.killed, Player::kTwo)) {
          v.require(pure_payoff(pair.shifted, tau, sigma) >= pure_payoff(pair.killed, tau, sigma),
                    "shifted payoff below killed payoff");
          ++pairs;
        }
      }
    }
  }
  v.detail << specs << " specs x 3 epsilons, " << pairs << " pure pairs compared";
  return v;
}

// --- 10 ---------------------------------------------------------------------
Verdict monte_carlo() {
  Verdict v;
  const auto inst = counterexample(Counterexample::kUninformed, 10);
  const int K = inst.terminal();
  std::vector<Rational> m1(static_cast<std::size_t>(K + 1), Rational(0));
  std::vector<Rational> m2 = m1;
  m1[2] = rational(1, 4);
  m1[5] = rational(1, 4);
  m1[static_cast<std::size_t>(K)] = rational(1, 2);
  m2[0] = rational(1, 3);
  m2[5] = rational(1, 3);
  m2[static_cast<std::size_t>(K)] = rational(1, 3);
  const auto xi = informed_strategy(inst, m1, m2);
  const auto zeta = uninformed_zeta_a(inst, rational(2, 7));
  std::vector<int> kappa{5, 7};

  int payoff = 0;
  int device_le = 0;
  int device_lt = 0;
  int tie_freq = 0;
  int tie_pay = 0;
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) {
    const SimulationOptions opt{100000, static_cast<std::uint64_t>(1000 + s), 4};
    payoff += sample_game(inst, xi, zeta, opt).within(3);
    const auto d = check_device_identity(inst, xi, kappa, opt);
    device_le += d.at_or_before.within(3);
    device_lt += d.before.within(3);
    const auto t = check_simultaneous(inst, xi, zeta, opt);
    tie_freq += t.tie_frequency.within(3);
    tie_pay += t.tie_payoff.within(3);
  }
  v.require(payoff >= 99, "payoff identity");
  v.require(device_le >= 99 && device_lt >= 99, "device identity");
  v.require(tie_freq >= 99 && tie_pay >= 99, "simultaneous-stop identity");
  v.detail << "within 3 se out of " << seeds << ": payoff " << payoff << ", device <= " << device_le << ", device < "
           << device_lt << ", tie frequency " << tie_freq << ", tie payoff " << tie_pay;
  return v;
}

}  // namespace
}  // namespace dynkin

int main() {
  using Clock = std::chrono::steady_clock;
  const std::vector<std::pair<std::string, std::function<dynkin::Verdict()>>> criteria{
      {"uninformed-example anchor payoffs", dynkin::anchor_payoffs},
      {"uninformed-example value separation", dynkin::value_separation},
      {"order-example best-response bounds", dynkin::order_bounds},
      {"jump-example bounds and hypothesis flag", dynkin::jump_bounds},
      {"payoff and best-response oracle equivalence", dynkin::oracle_equivalence},
      {"LP soundness and fictitious-play brackets", dynkin::lp_soundness},
      {"mollifier exactness", dynkin::mollifier_exactness},
      {"conditional-game consistency", dynkin::conditional_consistency},
      {"random-horizon equivalence", dynkin::random_horizon},
      {"Monte Carlo calibration", dynkin::monte_carlo},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    dynkin::Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.passed = false;
      v.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (!v.passed) ++failures;
    std::cout << (v.passed ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " -- "
              << v.detail.str() << " [" << std::fixed;
    std::cout.precision(1);
    std::cout << secs << " s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
