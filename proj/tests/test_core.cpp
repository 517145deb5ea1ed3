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

#include "dynkin/core.hpp"
#include "support.hpp"

namespace dynkin {
namespace {

GameInstance two_path_instance() {
  // Paths separate at k = 1 for player one; player two never learns which.
  const int n = 2;
  TimeGrid grid({Rational(0), rational(1, 2), Rational(1)});
  PathSpace space{{rational(1, 3), rational(2, 3)}, {}};
  auto split = Filtration({Partition::trivial(n), Partition::discrete(n), Partition::discrete(n)});
  auto blind = Filtration::constant(Partition::trivial(n), 3);
  auto f = ProcessTable({{Rational(3), Rational(4), Rational(5)}, {Rational(3), Rational(2), Rational(1)}});
  auto g = ProcessTable::filled(n, 3, Rational(-1));
  auto h = ProcessTable::filled(n, 3, Rational(0));
  return GameInstance(grid, space, split, split, blind, f, g, h);
}

TEST(RationalTest, ParsesAndPrintsCanonically) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-2")), "-2/1");
  EXPECT_EQ(to_string(parse_rational("0/7")), "0/1");
  EXPECT_THROW(parse_rational("1/0"), DynkinError);
  EXPECT_THROW(parse_rational("1.5"), DynkinError);
  EXPECT_THROW(parse_rational(""), DynkinError);
  EXPECT_THROW(parse_rational("3/-4"), DynkinError);
}

TEST(TimeGridTest, RejectsBadGrids) {
  EXPECT_THROW(TimeGrid({Rational(0)}), DynkinError);
  EXPECT_THROW(TimeGrid({Rational(1), Rational(2)}), DynkinError);
  EXPECT_THROW(TimeGrid({Rational(0), Rational(1), Rational(1)}), DynkinError);
  const auto g = TimeGrid::uniform(4);
  EXPECT_EQ(g.terminal(), 4);
  EXPECT_EQ(g.min_step(), rational(1, 4));
  EXPECT_EQ(g.index_of(rational(1, 2)), 2);
  EXPECT_FALSE(g.index_of(rational(1, 3)).has_value());
}

TEST(PartitionTest, CanonicalisesAndDetectsErrors) {
  Partition a({{2, 0}, {1}}, 3);
  Partition b({{1}, {0, 2}}, 3);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.atom_of(2), 0);
  EXPECT_TRUE(Partition::discrete(3).refines(a));
  EXPECT_FALSE(a.refines(Partition::discrete(3)));
  EXPECT_THROW(Partition({{0, 1}, {1}}, 2), DynkinError);
  EXPECT_THROW(Partition({{0}}, 2), DynkinError);
  EXPECT_THROW(Partition({{0}, {}}, 1), DynkinError);
}

TEST(ValidationTest, ReportsEachCondition) {
  const auto inst = two_path_instance();
  const auto report = validate_instance(inst);
  EXPECT_TRUE(report.all_passed());

  // Player two observing more than the master breaks the sub-filtration check.
  auto wide = inst.with_filtration(Player::kTwo, Filtration::constant(Partition::discrete(2), 3));
  auto master_coarse = GameInstance(inst.grid(), inst.space(), Filtration::constant(Partition::trivial(2), 3),
                                    Filtration::constant(Partition::trivial(2), 3),
                                    Filtration::constant(Partition::discrete(2), 3), inst.f(), inst.g(), inst.h());
  const auto r2 = validate_instance(master_coarse);
  EXPECT_FALSE(r2.passed(check_names::kPlayer2Sub));
  EXPECT_FALSE(r2.passed(check_names::kFAdapted));
  EXPECT_THROW(require_playable(master_coarse), DynkinError);
  EXPECT_FALSE(validate_instance(wide).passed(check_names::kPlayer2Sub));

  auto bad_probs = GameInstance(inst.grid(), PathSpace{{rational(1, 2), rational(1, 3)}, {}}, inst.master(),
                                inst.filtration(Player::kOne), inst.filtration(Player::kTwo), inst.f(), inst.g(),
                                inst.h());
  EXPECT_FALSE(validate_instance(bad_probs).passed(check_names::kProbNormalized));

  // f = 1 < h = 2 at the end violates the ordering, which is reported but not fatal.
  auto h = inst.h();
  h(0, 2) = 10;
  const auto unordered = inst.with_payoffs(inst.f(), inst.g(), h);
  EXPECT_FALSE(validate_instance(unordered).passed(check_names::kOrdering));
  EXPECT_NO_THROW(require_playable(unordered));
}

TEST(ValidationTest, ShapeErrorsAreMalformed) {
  const auto inst = two_path_instance();
  try {
    inst.with_payoffs(ProcessTable::filled(2, 2, Rational(0)), inst.g(), inst.h());
    FAIL() << "expected an error";
  } catch (const DynkinError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformed);
  }
}

TEST(StrategyTest, ValidatesMassAndShape) {
  const auto inst = two_path_instance();
  BehavioralStrategy ok(Player::kOne, {{rational(1, 2)}, {rational(1, 4), Rational(0)}, {rational(1, 4), rational(1, 2)}});
  EXPECT_NO_THROW(validate_strategy(ok, inst));
  BehavioralStrategy short_mass(Player::kOne, {{rational(1, 2)}, {Rational(0), Rational(0)}, {Rational(0), rational(1, 2)}});
  EXPECT_THROW(validate_strategy(short_mass, inst), DynkinError);
  BehavioralStrategy negative(Player::kOne, {{Rational(2)}, {Rational(-1), Rational(-1)}, {Rational(0), Rational(0)}});
  EXPECT_THROW(validate_strategy(negative, inst), DynkinError);
  BehavioralStrategy wrong_shape(Player::kOne, {{Rational(1)}, {Rational(0)}, {Rational(0)}});
  EXPECT_THROW(validate_strategy(wrong_shape, inst), DynkinError);
}

TEST(PureStoppingTimeTest, RejectsNonAdaptedRules) {
  const auto inst = two_path_instance();
  EXPECT_NO_THROW(PureStoppingTime(Player::kOne, {1, 2}, inst));
  // Player one cannot stop on one path only at time 0.
  EXPECT_THROW(PureStoppingTime(Player::kOne, {0, 1}, inst), DynkinError);
  // Player two can never tell the paths apart.
  EXPECT_THROW(PureStoppingTime(Player::kTwo, {1, 2}, inst), DynkinError);
  EXPECT_THROW(PureStoppingTime(Player::kTwo, {3, 3}, inst), DynkinError);
  const PureStoppingTime t(Player::kOne, {1, 2}, inst);
  EXPECT_EQ(t.decision(0, 0, inst), false);
  EXPECT_EQ(t.decision(1, 0, inst), true);
  EXPECT_EQ(t.decision(2, 0, inst), std::nullopt);
}

TEST(ConversionTest, ThresholdDecompositionRoundTrips) {
  testing::Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = testing::random_instance(rng);
    for (Player p : {Player::kOne, Player::kTwo}) {
      const auto b = testing::random_strategy(rng, inst, p);
      const auto mixed = mixed_from_behavioral(b, inst);
      EXPECT_EQ(behavioral_from_mixed(mixed, inst), b);
    }
  }
}

TEST(ConversionTest, StoppingIndexUsesStrictInequality) {
  const auto inst = two_path_instance();
  const auto b = deterministic_strategy(Player::kTwo, inst, {rational(1, 3), Rational(0), rational(2, 3)});
  EXPECT_EQ(stopping_index(b, inst, 0, Rational(0)), 0);
  EXPECT_EQ(stopping_index(b, inst, 0, rational(1, 3)), 2);  // level 1/3 does not exceed 1/3
  EXPECT_EQ(stopping_index(b, inst, 1, rational(99, 100)), 2);
  EXPECT_THROW(stopping_index(b, inst, 0, Rational(1)), DynkinError);
}

TEST(RestrictTest, RenormalisesProbabilities) {
  const auto inst = two_path_instance();
  const auto r = restrict_to_paths(inst, {1});
  EXPECT_EQ(r.instance.num_paths(), 1);
  EXPECT_EQ(r.instance.prob(0), 1);
  EXPECT_EQ(r.instance.f()(0, 1), 2);
  EXPECT_EQ(r.original_path, std::vector<int>({1}));
}

TEST(RandomInstanceTest, GeneratorProducesPlayableInstances) {
  testing::Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    testing::InstanceOptions opt;
    opt.ordered = trial % 2 == 0;
    opt.with_initial = true;
    const auto inst = testing::random_instance(rng, opt);
    const auto report = validate_instance(inst);
    for (const auto& c : report.checks) {
      if (c.name == check_names::kOrdering && !opt.ordered) continue;
      EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
    }
  }
}

}  // namespace
}  // namespace dynkin
