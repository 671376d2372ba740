#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "mechlab/mechanism.hpp"
#include "mechlab/rng.hpp"
#include "support.hpp"

using namespace mechlab;
using mechlab::testing::random_instance_for_tests;
using mechlab::testing::single_group;
using mechlab::testing::two_groups;

namespace {

// Exhaustive reference for nearest selection with the documented tie-break.
int brute_nearest(double x, const CandidateMultiset& cands, int excluded) {
  int best = -1;
  double best_dist = 0.0;
  double best_value = 0.0;
  for (const CandidateSlot& s : cands.slots) {
    if (s.id == excluded) continue;
    const double d = std::fabs(x - s.value);
    const bool better =
        best < 0 || d < best_dist ||
        (d == best_dist &&
         (s.value < best_value || (s.value == best_value && s.id < best)));
    if (better) {
      best = s.id;
      best_dist = d;
      best_value = s.value;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("nearest candidate selection") {
  const auto A = CandidateMultiset::from_values({0, 0, 2, 2, 4, 4});
  CHECK(nearest_candidate(1.0 - 0.01, A) == 0);  // first 0

  const auto single = CandidateMultiset::from_values({-3, 1.5, 8});
  CHECK(nearest_candidate(1.5, single) == 1);

  const auto pair = CandidateMultiset::from_values({0, 1});
  CHECK(nearest_candidate(0.5, pair) == 0);  // midpoint tie breaks left
}

TEST_CASE("second nearest excludes one slot") {
  const auto A = CandidateMultiset::from_values({0, 0, 2, 2, 4, 4});
  CHECK(second_nearest(1.0 - 0.01, A, 0) == 1);  // the other 0

  const auto pair = CandidateMultiset::from_values({0, 1});
  CHECK(second_nearest(0.9, pair, 1) == 0);  // only slot left

  const auto three = CandidateMultiset::from_values({0, 1, 3});
  CHECK(second_nearest(0.4, three, 0) == 1);  // 0.6 < 2.6
}

TEST_CASE("nearest selection matches its exhaustive reference") {
  Rng rng(41);
  for (int i = 0; i < 500; ++i) {
    const int m = rng.uniform_int(2, 8);
    std::vector<double> values;
    for (int j = 0; j < m; ++j) {
      // grid coordinates make exact distance ties common
      values.push_back(rng.uniform_int(-8, 8) * 0.5);
    }
    const auto cands = CandidateMultiset::from_values(values);
    const double x = rng.uniform_int(-16, 16) * 0.25;
    const int t = nearest_candidate(x, cands);
    CHECK(t == brute_nearest(x, cands, -1));
    CHECK(second_nearest(x, cands, t) == brute_nearest(x, cands, t));
  }
}

TEST_CASE("quantile index arithmetic") {
  CHECK(quantile_index(kCriticalQuantile, 5) == 2);  // ceil(1.9098)
  CHECK(quantile_index(1.0, 7) == 7);                // rightmost
  CHECK(quantile_index(0.0, 9) == 1);                // leftmost convention
  CHECK(quantile_index(0.5, 1) == 1);
  CHECK(quantile_index(0.5, 2) == 1);
  CHECK(quantile_index(0.5, 3) == 2);
  CHECK(quantile_index(0.25, 4) == 1);
  CHECK(quantile_index(0.75, 4) == 3);
  CHECK(quantile_index(1.0 / 3.0, 3) == 1);
  CHECK(quantile_index(2.0 / 3.0, 3) == 2);
}

TEST_CASE("quantile selection is invariant under agent duplication") {
  Rng rng(5);
  for (double q : {0.0, 0.5, 1.0}) {
    for (int n = 1; n <= 12; ++n) {
      std::vector<double> xs;
      for (int i = 0; i < n; ++i) xs.push_back(rng.uniform(-5.0, 5.0));
      std::sort(xs.begin(), xs.end());
      std::vector<double> doubled;
      for (double x : xs) {
        doubled.push_back(x);
        doubled.push_back(x);
      }
      const double picked = xs[quantile_index(q, n) - 1];
      const double picked_doubled = doubled[quantile_index(q, 2 * n) - 1];
      CHECK(picked == picked_doubled);
    }
  }
}

TEST_CASE("step 1 representatives") {
  SUBCASE("rightmost agent near 1 selects the (1,1) slots") {
    const double theta = 1e-3;
    const Instance inst = single_group({0, 0, 1, 1}, {0.5, 0.5 + theta});
    const auto reps = step1_representatives(inst, 1.0);
    REQUIRE(reps.size() == 1);
    CHECK(reps[0].quantile_agent == 2);
    CHECK(reps[0].y1 == 2);
    CHECK(reps[0].y2 == 3);
  }
  SUBCASE("single agent on a duplicated value takes both duplicate slots") {
    const Instance inst = single_group({0, 0, 1, 1}, {0.0});
    const auto reps = step1_representatives(inst, 1.0);
    CHECK(reps[0].y1 == 0);
    CHECK(reps[0].y2 == 1);
  }
  SUBCASE("identical groups receive identical representatives") {
    Rng rng(17);
    for (int i = 0; i < 50; ++i) {
      const int n = rng.uniform_int(1, 6);
      std::vector<Agent> agents;
      for (int j = 0; j < n; ++j) {
        const double x = rng.uniform(-5.0, 5.0);
        agents.push_back({j + 1, 1, x});
        agents.push_back({n + j + 1, 2, x});
      }
      std::vector<double> cands;
      const int m = rng.uniform_int(2, 6);
      for (int j = 0; j < m; ++j) cands.push_back(rng.uniform(-5.0, 5.0));
      const Instance inst = Instance::make(cands, agents);
      const double alpha = rng.uniform(0.0, 1.0);
      const auto reps = step1_representatives(inst, alpha);
      CHECK(reps[0].y1 == reps[1].y1);
      CHECK(reps[0].y2 == reps[1].y2);
    }
  }
}

TEST_CASE("step 2 aggregation") {
  SUBCASE("rightmost rank selects the right pair") {
    const Instance inst =
        two_groups({0, 0, 2, 2, 4, 4}, {-0.1, 0.1}, {3.9, 4.1});
    const auto reps = step1_representatives(inst, 1.0);
    const auto res = step2_aggregate(reps, 1.0, inst.candidates);
    CHECK(res.trace.w1_value == 4.0);
    CHECK(res.trace.w2_value == 4.0);
    CHECK(res.placement.value_a == 4.0);
    CHECK(res.placement.value_b == 4.0);
  }
  SUBCASE("single group passes its pair through") {
    const Instance inst = single_group({0, 1, 5}, {0.7});
    const auto reps = step1_representatives(inst, 0.5);
    const auto res = step2_aggregate(reps, 0.25, inst.candidates);
    CHECK(res.placement.slot_a == reps[0].y2);  // slots 0 and 1, canonical
    CHECK(res.placement.slot_b == reps[0].y1);
    CHECK(res.trace.witness_group == 1);
  }
  SUBCASE("low beta rank selects the left pair") {
    const Instance inst = two_groups({0, 0, 1, 1}, {0.9}, {0.1});
    const auto reps = step1_representatives(inst, 1.0);
    REQUIRE(inst.candidates.value_of(reps[0].y1) == 1.0);
    REQUIRE(inst.candidates.value_of(reps[1].y1) == 0.0);
    const auto res = step2_aggregate(reps, kCriticalQuantile, inst.candidates);
    CHECK(res.trace.w1_value == 0.0);
    CHECK(res.trace.w2_value == 0.0);
    CHECK(res.trace.witness_group == 2);
  }
}

TEST_CASE("full mechanism runs") {
  SUBCASE("two far groups under (1,1)") {
    const double theta = 1e-3;
    const Instance inst = two_groups({0, 0, 2, 2, 4, 4},
                                     {1 - theta, 1 - theta},
                                     {3 + theta, 3 + theta});
    const auto res = run_quantile(inst, {1.0, 1.0});
    CHECK(res.placement.value_a == 4.0);
    CHECK(res.placement.value_b == 4.0);
    CHECK(res.placement.slot_a == 4);
    CHECK(res.placement.slot_b == 5);
    CHECK(eval_objective(ObjectiveKind::MoM, inst, res.placement) ==
          doctest::Approx(3.001).epsilon(1e-12));
    CHECK(res.trace.witness_group == 2);
  }
  SUBCASE("two near groups under (1/2,1/2)") {
    const double theta = 1e-3;
    const Instance inst = two_groups({0, 0, 1, 1}, {0.5 - theta}, {1.0});
    const auto res = run_quantile(inst, {0.5, 0.5});
    CHECK(res.placement.value_a == 0.0);
    CHECK(res.placement.value_b == 0.0);
    CHECK(eval_objective(ObjectiveKind::AoA, inst, res.placement) ==
          doctest::Approx(0.7495).epsilon(1e-12));
  }
  SUBCASE("agent sitting on a duplicated candidate gets cost zero") {
    const Instance inst = single_group({2, 2, 9}, {2.0});
    const auto res = run_quantile(inst, {0.5, 0.5});
    CHECK(res.placement.value_a == 2.0);
    CHECK(res.placement.value_b == 2.0);
    CHECK(eval_objective(ObjectiveKind::MoM, inst, res.placement) == 0.0);
  }
  SUBCASE("config outside the unit square is rejected") {
    const Instance inst = single_group({0, 1}, {0.5});
    CHECK_THROWS_AS(run_quantile(inst, {1.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(run_quantile(inst, {0.5, -0.1}), std::invalid_argument);
  }
}

TEST_CASE("presets") {
  const auto aoa = preset_config("aoa");
  CHECK(aoa.alpha == 0.5);
  CHECK(aoa.beta == 0.5);
  const auto mom = preset_config("mom");
  CHECK(mom.alpha == 1.0);
  CHECK(mom.beta == 1.0);
  const auto moa = preset_config("moa");
  CHECK(moa.alpha == doctest::Approx(0.3819660112501051).epsilon(1e-15));
  CHECK(moa.beta == 1.0);
  const auto aom = preset_config("aom");
  CHECK(aom.alpha == 1.0);
  CHECK(aom.beta == doctest::Approx(0.3819660112501051).epsilon(1e-15));
  CHECK_THROWS_AS(preset_config("nope"), std::invalid_argument);
}

TEST_CASE("adjacency and witness hold over random instances") {
  Rng rng(123);
  const QuantileConfig grid[] = {{0, 0},     {0, 1},    {1, 0},
                                 {1, 1},     {0.5, 0.5}, {0.25, 0.75},
                                 {kCriticalQuantile, 1}, {1, kCriticalQuantile}};
  for (int i = 0; i < 400; ++i) {
    const Instance inst = random_instance_for_tests(rng);
    for (const QuantileConfig& cfg : grid) {
      MechanismResult res;  // run_quantile asserts both invariants itself
      REQUIRE_NOTHROW(res = run_quantile(inst, cfg));
      const auto& t = res.trace;
      bool found = false;
      for (const auto& r : t.reps) {
        found = found || (inst.candidates.value_of(r.y1) == t.w1_value &&
                          inst.candidates.value_of(r.y2) == t.w2_value);
      }
      CHECK(found);
      CHECK(values_adjacent(inst.candidates, t.w1_value, t.w2_value));
    }
  }
}

TEST_CASE("adjacency and witness survive tie-heavy gridded instances") {
  Rng rng(611);
  const QuantileConfig grid[] = {{0, 0},     {1, 1},
                                 {0.5, 0.5}, {kCriticalQuantile, 1},
                                 {1, kCriticalQuantile}, {0.25, 0.75}};
  for (int i = 0; i < 300; ++i) {
    const Instance inst = testing::gridded_instance_for_tests(rng);
    for (const QuantileConfig& cfg : grid) {
      REQUIRE_NOTHROW(run_quantile(inst, cfg));
    }
  }
}

TEST_CASE("step 2 signals non-witnessable synthetic profiles") {
  // Cannot arise from step 1 (its pairs are adjacent), but the aggregation
  // must refuse to guess a slot assignment when fed one.
  const auto cands = CandidateMultiset::from_values({0, 1, 2, 3});
  std::vector<GroupRepresentatives> reps(2);
  reps[0] = {1, 1, /*y1=*/2, /*y2=*/0};  // values (2, 0)
  reps[1] = {2, 2, /*y1=*/1, /*y2=*/3};  // values (1, 3)
  CHECK_THROWS_AS(step2_aggregate(reps, 1.0, cands), WitnessError);
}

TEST_CASE("mechanism is deterministic") {
  Rng rng(9);
  const Instance inst = random_instance_for_tests(rng);
  const QuantileConfig cfg{0.37, 0.81};
  const auto first = run_quantile(inst, cfg);
  const auto second = run_quantile(inst, cfg);
  CHECK(first.placement.slot_a == second.placement.slot_a);
  CHECK(first.placement.slot_b == second.placement.slot_b);
  CHECK(first.trace.witness_group == second.trace.witness_group);
}
