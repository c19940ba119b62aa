// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "sbsp/exact.h"
#include "sbsp/greedy.h"
#include "test_util.h"

namespace sbsp {
namespace {

TEST(GreedySchedule, TwoSchoolsStagger) {
  const Instance inst = MakeInstance(2, {School{0, {1}}, School{0, {1}}});
  const GreedyOutcome out = GreedySchedule(inst, 1);
  ASSERT_EQ(out.status, GreedyStatus::kFeasible);
  EXPECT_EQ(out.schedule.starts, (std::vector<std::vector<int>>{{1}, {2}}));
  EXPECT_EQ(out.final_loads.loads, (std::vector<int>{1, 1}));
}

TEST(GreedySchedule, RunsOutOfSlots) {
  // r=2 is truncated to M=1 at ingestion; the trace is unchanged.
  const Instance inst = MakeInstance(1, {School{0, {2}}, School{0, {2}}});
  const GreedyOutcome out = GreedySchedule(inst, 1);
  EXPECT_EQ(out.status, GreedyStatus::kInfeasible);
  EXPECT_EQ(out.schedule.starts[0], std::vector<int>{1});
  EXPECT_EQ(out.schedule.starts[1], std::vector<int>{0});
  EXPECT_EQ(out.final_loads.loads, std::vector<int>{1});
}

TEST(GreedySchedule, TrivialBudgetAlwaysFeasible) {
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    const Instance inst = testing::RandomTinyInstance(rng);
    const InstanceStats st = DerivedStats(inst);
    EXPECT_EQ(GreedySchedule(inst, inst.num_schools() * st.gamma_max).status,
              GreedyStatus::kFeasible);
  }
}

TEST(GreedySearch, SingleSchool) {
  const Instance inst = MakeInstance(4, {School{2, {1, 3, 2}}});
  const SearchResult res = GreedySearch(inst);
  EXPECT_EQ(res.lower, 3);
  EXPECT_EQ(res.upper, 3);
  EXPECT_TRUE(res.transcript.empty());
  EXPECT_EQ(res.schedule.starts[0], (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(MaxLoad(inst, res.schedule, HorizonMode::kExtended), 3);
}

TEST(GreedySearch, TwoSchools) {
  const Instance inst = MakeInstance(2, {School{0, {1}}, School{0, {1}}});
  const SearchResult res = GreedySearch(inst);
  EXPECT_EQ(res.upper, 1);
  EXPECT_EQ(MaxLoad(inst, res.schedule, HorizonMode::kExtended), 1);
  EXPECT_EQ(res.lower_bound, 1);
  EXPECT_EQ(res.upper_bound, 2);
  EXPECT_EQ(testing::BruteForceOpt(inst, true), 1);
}

TEST(Properties, LoadBoundAndSandwich) {
  Rng rng(77);
  for (int k = 0; k < 200; ++k) {
    const Instance inst = testing::RandomTinyInstance(rng);
    const InstanceStats st = DerivedStats(inst);
    for (int guess = 1; guess <= inst.num_schools() * st.gamma_max; ++guess) {
      const GreedyOutcome out = GreedySchedule(inst, guess);
      if (out.status != GreedyStatus::kFeasible) continue;
      ASSERT_LE(MaxLoad(inst, out.schedule, HorizonMode::kPaper),
                guess + st.gamma_max);
      // SSP semantics: one start per school.
      for (const auto& row : out.schedule.starts) {
        for (int t : row) ASSERT_EQ(t, row[0]);
      }
    }
    const SearchResult res = GreedySearch(inst);
    ASSERT_LE(res.upper - res.lower, 1);
    const int opt = testing::BruteForceOpt(inst, true);
    const Instance ssp = AsSsp(inst);
    ASSERT_EQ(ExactOpt(ssp, HorizonMode::kExtended).opt, opt);
    ASSERT_LE(res.upper + st.gamma_max, 3 * opt);
    ASSERT_LE(opt, res.upper + st.gamma_max);
    ASSERT_LE(MaxLoad(inst, res.schedule, HorizonMode::kPaper),
              res.upper + st.gamma_max);
    if (res.infeasible_lower_bound > 0) {
      ASSERT_GE(opt, res.infeasible_lower_bound);
    }

    // Transcript monotonicity and loop count.
    int prev_u = inst.num_schools() * st.gamma_max;
    int prev_l = st.gamma_max;
    for (const SearchStep& step : res.transcript) {
      ASSERT_LE(step.upper, prev_u);
      ASSERT_GE(step.lower, prev_l);
      prev_u = step.upper;
      prev_l = step.lower;
    }
    const int cap = static_cast<int>(std::ceil(
                        std::log2(inst.num_schools() * st.gamma_max))) +
                    1;
    ASSERT_LE(static_cast<int>(res.transcript.size()), cap);
  }
}

TEST(GreedySearch, Deterministic) {
  const Instance inst = GenerateInstance({DeskSize(2), Family::kBase, 3});
  const SearchResult a = GreedySearch(inst);
  const SearchResult b = GreedySearch(inst);
  EXPECT_EQ(a.upper, b.upper);
  EXPECT_EQ(a.schedule, b.schedule);
  EXPECT_EQ(a.transcript.size(), b.transcript.size());
}

}  // namespace
}  // namespace sbsp
