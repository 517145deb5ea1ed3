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


#include <gtest/gtest.h>

#include "dynkin/chains.hpp"
#include "dynkin/counterexamples.hpp"
#include "dynkin/jumps.hpp"
#include "dynkin/random_horizon.hpp"
#include "dynkin/reproduce.hpp"
#include "dynkin/scenario.hpp"
#include "support.hpp"

namespace dynkin {
namespace {

// Two common paths that split at index 1, on a three-point grid.
CommonSetting split_common() {
  TimeGrid grid({Rational(0), rational(1, 2), Rational(1)});
  Filtration fl({Partition::trivial(2), Partition::discrete(2), Partition::discrete(2)});
  return {grid, {rational(1, 4), rational(3, 4)}, fl};
}

ScenarioSpec random_scenario(testing::Rng& rng) {
  ScenarioSpec s;
  s.I = 2;
  s.J = 2;
  s.pi = {{rational(1, 3), Rational(0)}, {rational(1, 6), rational(1, 2)}};
  s.common = split_common();
  auto table = [&] {
    std::vector<std::vector<Rational>> rows;
    for (int c = 0; c < 2; ++c) {
      // Adapted to the common filtration: equal across paths at index 0.
      rows.push_back({Rational(0), Rational(rng.uniform(-4, 4)), Rational(rng.uniform(-4, 4))});
    }
    const Rational start = rng.uniform(-4, 4);
    rows[0][0] = start;
    rows[1][0] = start;
    return ProcessTable(std::move(rows));
  };
  for (auto* tables : {&s.f, &s.g, &s.h}) {
    tables->assign(2, {});
    for (auto& row : *tables) row = {table(), table()};
  }
  return s;
}

TEST(ScenarioTest, BuildsProductOfPositiveWeightPairs) {
  testing::Rng rng(1);
  const auto spec = random_scenario(rng);
  const auto game = build_scenario_game(spec);
  EXPECT_EQ(game.instance.num_paths(), 6);
  const auto report = validate_instance(game.instance);
  EXPECT_TRUE(report.passed(check_names::kPlayer1Sub));
  EXPECT_TRUE(report.passed(check_names::kPlayer2Sub));
  EXPECT_TRUE(report.passed(check_names::kFAdapted));
  EXPECT_EQ(game.instance.space().labels[0].at("i"), "1");
  // Player one knows i at time 0 but not j.
  EXPECT_EQ(game.instance.filtration(Player::kOne).at(0).num_atoms(), 2);
  EXPECT_EQ(game.instance.filtration(Player::kTwo).at(0).num_atoms(), 2);
  EXPECT_EQ(game.instance.master().at(0).num_atoms(), 3);
}

TEST(ScenarioTest, GluedStrategiesMatchScenarioPayoff) {
  testing::Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const auto spec = random_scenario(rng);
    const auto game = build_scenario_game(spec);
    const auto common = scenario_common_instance(spec, 0, 0);
    std::vector<BehavioralStrategy> xi;
    std::vector<BehavioralStrategy> zeta;
    for (int i = 0; i < 2; ++i) xi.push_back(testing::random_strategy(rng, common, Player::kOne));
    for (int j = 0; j < 2; ++j) zeta.push_back(testing::random_strategy(rng, common, Player::kTwo));
    const auto gx = glue_scenario_strategies(spec, game, Player::kOne, xi);
    const auto gz = glue_scenario_strategies(spec, game, Player::kTwo, zeta);
    EXPECT_EQ(expected_payoff(game.instance, gx, gz), scenario_expected_payoff(spec, xi, zeta));
  }
}

TEST(ScenarioTest, RejectsBadSpecs) {
  testing::Rng rng(3);
  auto spec = random_scenario(rng);
  spec.pi[0][0] = rational(1, 2);
  EXPECT_THROW(build_scenario_game(spec), DynkinError);
  spec = random_scenario(rng);
  spec.f[0].pop_back();
  EXPECT_THROW(build_scenario_game(spec), DynkinError);
  spec = random_scenario(rng);
  EXPECT_THROW(glue_scenario_strategies(spec, build_scenario_game(spec), Player::kOne, {}), DynkinError);
}

TEST(CounterexampleTest, OrderExampleTables) {
  const auto inst = counterexample(Counterexample::kOrder, 4);
  EXPECT_EQ(inst.num_paths(), 2);
  EXPECT_EQ(inst.grid().size(), 5);
  EXPECT_EQ(inst.f()(0, 2), 1);
  EXPECT_EQ(inst.g()(1, 2), rational(1, 4));
  EXPECT_EQ(inst.h()(0, 4), 2);
  EXPECT_EQ(inst.h()(1, 4), 0);
  EXPECT_EQ(inst.h()(1, 1), 1);
  EXPECT_FALSE(validate_instance(inst).passed(check_names::kOrdering));
}

TEST(CounterexampleTest, UninformedGridContainsBreakpoints) {
  const auto inst = counterexample(Counterexample::kUninformed, 3);
  for (const auto& t : {rational(1, 10), rational(2, 5), rational(1, 2), rational(3, 5), rational(1, 3)}) {
    EXPECT_TRUE(inst.grid().index_of(t).has_value()) << to_string(t);
  }
  const int half = *inst.grid().index_of(rational(1, 2));
  EXPECT_EQ(inst.g()(0, half), rational(3, 2));
  EXPECT_EQ(inst.f()(0, 0), 4);
  EXPECT_EQ(inst.h()(1, inst.terminal()), 5);
  EXPECT_EQ(inst.filtration(Player::kTwo).at(0).num_atoms(), 1);
  EXPECT_EQ(inst.filtration(Player::kOne).at(0).num_atoms(), 2);
}

TEST(CounterexampleTest, IdsAndGridErrors) {
  for (auto c : {Counterexample::kOrder, Counterexample::kUninformed, Counterexample::kJumps}) {
    EXPECT_EQ(counterexample_from_id(counterexample_id(c)), c);
  }
  EXPECT_THROW(counterexample_from_id("9.9"), DynkinError);
  EXPECT_THROW(counterexample(Counterexample::kJumps, 0), DynkinError);
}

TEST(JumpsTest, CounterexampleFallsOutsideBothBranches) {
  const auto inst = counterexample(Counterexample::kJumps, 10);
  const auto r = validate_A2prime(inst, jump_counterexample_decomposition(inst));
  EXPECT_TRUE(r.boundary_ok);
  EXPECT_TRUE(r.events_ok);
  EXPECT_EQ(r.branch, JumpBranch::kNeither);
  EXPECT_FALSE(r.within_hypotheses);
}

TEST(JumpsTest, BranchesAreClassified) {
  const auto inst = counterexample(Counterexample::kJumps, 4);
  EXPECT_EQ(validate_A2prime(inst, regular_decomposition(inst)).branch, JumpBranch::kBoth);

  // Flip the sign of the f jump: f now jumps down, g still jumps down.
  auto d = jump_counterexample_decomposition(inst);
  auto mod = inst;
  for (auto& e : d.events) {
    if (e.process == JumpProcess::kF) e.magnitude = -2;
  }
  auto f = inst.f();
  for (int w = 0; w < inst.num_paths(); ++w) {
    for (int k = 0; k <= inst.terminal(); ++k) {
      if (d.f_jump(w, k) != 0) f(w, k) -= 4;
      d.f_jump(w, k) = -d.f_jump(w, k);
    }
  }
  mod = inst.with_payoffs(f, inst.g(), inst.h());
  EXPECT_EQ(validate_A2prime(mod, d).branch, JumpBranch::kFNonIncreasing);
}

TEST(JumpsTest, InconsistentDecompositionIsAValidationError) {
  const auto inst = counterexample(Counterexample::kJumps, 4);
  auto d = regular_decomposition(inst);
  d.f_regular(0, 1) += 1;
  try {
    validate_A2prime(inst, d);
    FAIL() << "expected a validation error";
  } catch (const DynkinError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
  }
}

TEST(JumpsTest, JumpAtTerminalBreaksBoundary) {
  const auto inst = counterexample(Counterexample::kJumps, 4);
  auto d = regular_decomposition(inst);
  const int K = inst.terminal();
  for (int w = 0; w < 2; ++w) {
    d.f_jump(w, K) = 1;
    d.f_regular(w, K) -= 1;
  }
  EXPECT_FALSE(validate_A2prime(inst, d).boundary_ok);
}

ChainSpec two_state(const Rational& stay) {
  return {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}, {{stay, 1 - stay}, {1 - stay, stay}}};
}

TEST(ChainTest, TwoStepGameHasSixteenPaths) {
  const TimeGrid grid({Rational(0), rational(1, 2), Rational(1)});
  TwoChainPayoffs pay{[](const Rational&, const Rational& x, const Rational& y) -> Rational { return x + y + 1; },
                      [](const Rational&, const Rational& x, const Rational& y) -> Rational { return x - y - 1; },
                      [](const Rational&, const Rational& x, const Rational&) -> Rational { return x; }};
  const auto game = build_two_chain_game(two_state(rational(2, 3)), two_state(rational(1, 2)), grid, pay);
  EXPECT_EQ(game.instance.num_paths(), 16);
  EXPECT_TRUE(game.warnings.empty());
  const auto report = validate_instance(game.instance);
  EXPECT_TRUE(report.passed(check_names::kPlayer1Sub));
  EXPECT_TRUE(report.passed(check_names::kPlayer2Sub));
  EXPECT_TRUE(solve_matrix_game(game.instance).certificate.holds);
}

TEST(ChainTest, IrrelevantSecondChainDoesNotChangeTheValue) {
  const TimeGrid grid({Rational(0), rational(1, 2), Rational(1)});
  TwoChainPayoffs pay{[](const Rational& t, const Rational& x, const Rational&) -> Rational { return 2 - t + x; },
                      [](const Rational& t, const Rational& x, const Rational&) -> Rational { return t - x; },
                      [](const Rational&, const Rational& x, const Rational&) -> Rational { return x / 2; }};
  const auto x = two_state(rational(3, 4));
  const auto with_y = build_two_chain_game(x, two_state(rational(1, 3)), grid, pay);
  const auto without_y = build_two_chain_game(x, ChainSpec::constant(Rational(0)), grid, pay);
  EXPECT_EQ(without_y.instance.num_paths(), 4);
  EXPECT_EQ(solve_matrix_game(with_y.instance).value(), solve_matrix_game(without_y.instance).value());
}

TEST(ChainTest, WarnsWhenEnumerationIsInfeasible) {
  std::vector<Rational> t;
  for (int k = 0; k <= 4; ++k) t.push_back(rational(k, 4));
  TwoChainPayoffs pay{[](const Rational&, const Rational& x, const Rational&) -> Rational { return x; },
                      [](const Rational&, const Rational&, const Rational& y) -> Rational { return -y; },
                      [](const Rational&, const Rational&, const Rational&) -> Rational { return Rational(0); }};
  const auto game = build_two_chain_game(two_state(rational(1, 2)), two_state(rational(1, 2)), TimeGrid(t), pay, 100);
  EXPECT_FALSE(game.warnings.empty());
  const ChainSpec leaky{{Rational(0)}, {rational(1, 2)}, {{Rational(1)}}};
  EXPECT_THROW(build_two_chain_game(leaky, two_state(rational(1, 2)), TimeGrid(t), pay), DynkinError);
}

TEST(BinomialTest, HiddenDriftGameIsWellFormed) {
  BinomialSpec s;
  s.grid = TimeGrid({Rational(0), rational(1, 3), rational(2, 3), Rational(1)});
  s.type_probs = {rational(1, 2), rational(1, 2)};
  s.up_probs = {rational(3, 4), rational(1, 4)};
  s.f = [](const Rational&, const Rational& x) -> Rational { return x + 2; };
  s.g = [](const Rational&, const Rational& x) -> Rational { return x - 2; };
  s.h = [](const Rational&, const Rational& x) -> Rational { return x; };
  const auto blind = build_binomial_game(s);
  s.player1_sees_type = true;
  const auto informed = build_binomial_game(s);
  EXPECT_EQ(blind.num_paths(), 16);
  EXPECT_TRUE(validate_instance(informed).passed(check_names::kPlayer1Sub));
  EXPECT_LE(solve_matrix_game(informed).value(), solve_matrix_game(blind).value());
}

RandomHorizonSpec random_horizon(testing::Rng& rng, const Rational& eps) {
  RandomHorizonSpec s;
  const int K = rng.uniform(2, 3);
  std::vector<Rational> t;
  for (int k = 0; k <= K; ++k) t.push_back(rational(k, K));
  s.grid = TimeGrid(t);
  s.probs = {rational(1, 2), rational(1, 2)};
  s.base = Filtration(std::vector<Partition>(static_cast<std::size_t>(K + 1), Partition::discrete(2)));
  auto table = [&](int lo) {
    std::vector<std::vector<Rational>> rows(2);
    for (auto& r : rows) {
      for (int k = 0; k <= K; ++k) r.push_back(rng.uniform(lo, 4));
    }
    return ProcessTable(std::move(rows));
  };
  s.f0 = table(0);
  s.g0 = table(-4);
  s.h0 = table(-4);
  s.horizon = {{rational(1, 2 * K + 1), rational(1, 3)}, {rational(2 * K - 1, 2 * K + 1) + rational(1, 97), rational(2, 3)}};
  s.epsilon = eps;
  return s;
}

TEST(RandomHorizonTest, KilledAndShiftedGamesShareTheValue) {
  testing::Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    for (const auto& eps : {rational(1, 100), rational(1, 7), Rational(2)}) {
      const auto pair = build_random_horizon_pair(random_horizon(rng, eps));
      EXPECT_EQ(solve_matrix_game(pair.killed).value(), solve_matrix_game(pair.shifted).value());
    }
  }
}

TEST(RandomHorizonTest, PlayerOneLearnsThetaAfterItPasses) {
  testing::Rng rng(8);
  const auto pair = build_random_horizon_pair(random_horizon(rng, rational(1, 10)));
  EXPECT_EQ(pair.killed.num_paths(), 4);
  const auto& p1 = pair.killed.filtration(Player::kOne);
  const auto& p2 = pair.killed.filtration(Player::kTwo);
  EXPECT_EQ(p1.at(0).num_atoms(), 2);
  EXPECT_EQ(p1.at(1).num_atoms(), 4);
  EXPECT_EQ(p2.at(1).num_atoms(), 2);
  EXPECT_TRUE(validate_instance(pair.shifted).passed(check_names::kFAdapted));
}

TEST(RandomHorizonTest, RejectsBadSpecs) {
  testing::Rng rng(9);
  auto s = random_horizon(rng, rational(1, 10));
  s.epsilon = 0;
  EXPECT_THROW(build_random_horizon_pair(s), DynkinError);
  s = random_horizon(rng, rational(1, 10));
  s.horizon[0].theta = s.grid[1];
  EXPECT_THROW(build_random_horizon_pair(s), DynkinError);
  s = random_horizon(rng, rational(1, 10));
  s.horizon[0].mass = rational(1, 2);
  EXPECT_THROW(build_random_horizon_pair(s), DynkinError);
  s = random_horizon(rng, rational(1, 10));
  s.f0(0, 0) = -1;
  EXPECT_THROW(build_random_horizon_pair(s), DynkinError);
}

TEST(ReproduceTest, AllCounterexamplesPassAtSmallGrids) {
  for (auto c : {Counterexample::kOrder, Counterexample::kUninformed, Counterexample::kJumps}) {
    for (int K : {3, 5}) {
      const auto r = reproduce(c, K);
      for (const auto& line : r.checks) EXPECT_TRUE(line.passed) << r.id << " K=" << K << ": " << line.name << " " << line.detail;
    }
  }
}

TEST(ReproduceTest, OrderBoundNeedsThreeSteps) {
  // On {0, 1/2, 1} the grid-exact lower bound is 4/7 < 3/5.
  const auto r = reproduce(Counterexample::kOrder, 2);
  for (const auto& line : r.checks) {
    EXPECT_EQ(line.passed, line.name != "lower_bound_at_least_3_5") << line.name;
  }
}

}  // namespace
}  // namespace dynkin
