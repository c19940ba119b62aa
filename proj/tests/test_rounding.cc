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

#include "sbsp/errors.h"
#include "sbsp/rounding.h"
#include "sbsp/simplex.h"
#include "test_util.h"

namespace sbsp {
namespace {

FractionalSchedule FromX(std::vector<std::vector<std::vector<double>>> x) {
  FractionalSchedule f;
  f.s.resize(x.size());
  for (size_t n = 0; n < x.size(); ++n) {
    for (const auto& v : x[n]) f.s[n].push_back(SFromX(v));
  }
  f.x = std::move(x);
  return f;
}

FractionalSchedule SolveFractional(const Instance& inst) {
  const LpModel model = BuildLp3s(inst);
  const LpSolution sol = Solve(model);
  EXPECT_EQ(sol.status, SolveStatus::kOptimal);
  return ExtractFractional(model, sol.values);
}

TEST(InvertCdf, Boundary) {
  const std::vector<double> s{0.5, 1.0};
  EXPECT_EQ(InvertCdf(s, 0.3), 1);
  EXPECT_EQ(InvertCdf(s, 0.5), 1);
  EXPECT_EQ(InvertCdf(s, 0.7), 2);
  bool drift = false;
  EXPECT_EQ(InvertCdf(std::vector<double>{0.5, 1.0 - 1e-9}, 0.9999999999,
                      &drift),
            2);
  EXPECT_TRUE(drift);
}

TEST(RoundSsp, PointMass) {
  const Instance inst = MakeInstance(3, {School{0, {1, 2}}});
  const FractionalSchedule f = FromX({{{1, 0, 0}, {1, 0, 0}}});
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const RoundingResult r = RoundSsp(inst, f, rng);
    EXPECT_EQ(r.schedule.starts[0], (std::vector<int>{1, 1}));
    EXPECT_EQ(r.z_paper, 2);
  }
}

TEST(RoundSsp, BinomialFrequency) {
  const Instance inst = MakeInstance(2, {School{0, {1}}});
  const FractionalSchedule f = FromX({{{0.5, 0.5}}});
  Rng rng(2);
  const int trials = 20000;
  int first = 0;
  for (int k = 0; k < trials; ++k) {
    first += RoundSsp(inst, f, rng).schedule.starts[0][0] == 1;
  }
  EXPECT_NEAR(first / double(trials), 0.5, 4 * std::sqrt(0.25 / trials));
}

TEST(RoundSsp, SchoolsIndependent) {
  const Instance inst = MakeInstance(3, {School{0, {1}}, School{0, {1}}});
  const FractionalSchedule f =
      FromX({{{0.3, 0.7, 0.0}}, {{0.2, 0.5, 0.3}}});
  Rng rng(3);
  const int trials = 20000;
  double table[3][3] = {};
  for (int k = 0; k < trials; ++k) {
    const RoundingResult r = RoundSsp(inst, f, rng);
    table[r.schedule.starts[0][0] - 1][r.schedule.starts[1][0] - 1] += 1;
  }
  double rows[3] = {}, cols[3] = {};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      rows[a] += table[a][b];
      cols[b] += table[a][b];
    }
  }
  EXPECT_EQ(rows[2], 0);
  double chi2 = 0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 3; ++b) {
      const double expected = rows[a] * cols[b] / trials;
      chi2 += (table[a][b] - expected) * (table[a][b] - expected) / expected;
    }
  }
  // (2-1)(3-1) = 2 degrees of freedom; 99th percentile 9.2103.
  EXPECT_LT(chi2, 9.2103);
}

TEST(RoundSsp, RejectsUnequalMarginals) {
  const Instance inst = MakeInstance(2, {School{0, {1, 1}}});
  Rng rng(1);
  EXPECT_THROW(RoundSsp(inst, FromX({{{1, 0}, {0, 1}}}), rng), ParameterError);
}

TEST(RoundSbsp, WindowHoldsOnEveryDraw) {
  const Instance inst = MakeInstance(3, {School{1, {1, 1}}});
  FractionalSchedule f;
  f.s = {{{0.4, 1.0, 1.0}, {0.2, 0.6, 1.0}}};
  f.x = {{XFromS(f.s[0][0]), XFromS(f.s[0][1])}};
  Rng rng(4);
  for (int k = 0; k < 10000; ++k) {
    const RoundingResult r = RoundSbsp(inst, f, rng);
    ASSERT_LE(std::abs(r.schedule.starts[0][0] - r.schedule.starts[0][1]), 1);
    ASSERT_TRUE(CheckFeasible(inst, r.schedule).ok);
    ASSERT_EQ(r.gammas.size(), 1u);
    ASSERT_EQ(r.schedule.starts[0][0], InvertCdf(f.s[0][0], r.gammas[0]));
  }
}

TEST(RoundSbsp, RejectsBadMarginals) {
  const Instance inst = MakeInstance(2, {School{0, {1}}});
  Rng rng(1);
  EXPECT_THROW(RoundSbsp(inst, FromX({{{0.5, 0.4}}}), rng), ParameterError);
  FractionalSchedule negative;
  negative.x = {{{1.2, -0.2}}};
  negative.s = {{{1.2, 1.0}}};
  EXPECT_THROW(RoundSbsp(inst, negative, rng), ParameterError);
  EXPECT_THROW(RoundSbsp(inst, FromX({{{1.0}}}), rng), ParameterError);
}

TEST(RoundSbsp, FeasibleAndMarginalLawOnLpSolutions) {
  Rng pick(5);
  for (int k = 0; k < 5; ++k) {
    const Instance inst = testing::RandomTinyInstance(pick);
    const FractionalSchedule f = SolveFractional(inst);
    const int trials = 20000;
    std::vector<std::vector<std::vector<int>>> hits(inst.num_schools());
    for (int n = 0; n < inst.num_schools(); ++n) {
      hits[n].assign(inst.schools[n].num_routes(),
                     std::vector<int>(inst.num_slots, 0));
    }
    Rng rng(StreamSeed(99, k));
    for (int t = 0; t < trials; ++t) {
      const RoundingResult r = RoundSbsp(inst, f, rng);
      ASSERT_TRUE(CheckFeasible(inst, r.schedule).ok);
      for (int n = 0; n < inst.num_schools(); ++n) {
        for (int i = 0; i < inst.schools[n].num_routes(); ++i) {
          ++hits[n][i][r.schedule.starts[n][i] - 1];
        }
      }
    }
    for (int n = 0; n < inst.num_schools(); ++n) {
      for (int i = 0; i < inst.schools[n].num_routes(); ++i) {
        for (int m = 0; m < inst.num_slots; ++m) {
          const double p = f.x[n][i][m];
          const double se = std::sqrt(p * (1 - p) / trials);
          ASSERT_LE(std::abs(hits[n][i][m] / double(trials) - p),
                    4 * se + 1e-12);
        }
      }
    }
  }
}

TEST(BestOfK, SingleTrial) {
  const Instance inst = MakeInstance(2, {School{0, {1}}, School{0, {1}}});
  const FractionalSchedule f = FromX({{{0.5, 0.5}}, {{0.5, 0.5}}});
  const BestOfKResult r = BestOfK(inst, f, 1, 7);
  EXPECT_EQ(r.summary.trials, 1);
  EXPECT_EQ(r.best.trial_index, 0);
  EXPECT_EQ(r.summary.min, r.best.z_paper);
  EXPECT_EQ(r.summary.max, r.best.z_paper);
  Rng same(StreamSeed(7, 0));
  EXPECT_EQ(RoundSbsp(inst, f, same).schedule, r.best.schedule);
  EXPECT_THROW(BestOfK(inst, f, 0, 7), ParameterError);
}

TEST(BestOfK, IntegralInputIsDegenerate) {
  const Instance inst = MakeInstance(3, {School{1, {2, 1}}, School{0, {3}}});
  const StartSchedule s{{{1, 2}, {3}}};
  const FractionalSchedule f = FractionalFromSchedule(inst, s);
  const BestOfKResult r = BestOfK(inst, f, 50, 1);
  EXPECT_EQ(r.summary.min, r.summary.max);
  EXPECT_DOUBLE_EQ(r.summary.mean, r.summary.min);
  EXPECT_EQ(r.best.schedule, s);
  EXPECT_EQ(r.best.trial_index, 0);
}

TEST(BestOfK, SandwichAndThreads) {
  Rng pick(6);
  for (int k = 0; k < 10; ++k) {
    const Instance inst = testing::RandomTinyInstance(pick);
    const FractionalSchedule f = SolveFractional(inst);
    const BestOfKResult a = BestOfK(inst, f, 1000, 11, RoundingScheme::kSbsp, 1);
    const BestOfKResult b = BestOfK(inst, f, 1000, 11, RoundingScheme::kSbsp, 4);
    ASSERT_EQ(a.best.schedule, b.best.schedule);
    ASSERT_EQ(a.best.trial_index, b.best.trial_index);
    ASSERT_EQ(a.summary.mean, b.summary.mean);
    ASSERT_GE(a.best.z_paper, std::ceil(f.objective - 1e-9));
    ASSERT_LE(a.best.z_paper, a.summary.z_rand);
    ASSERT_LE(a.summary.min, a.summary.mean);
    ASSERT_LE(a.summary.mean, a.summary.max);
    ASSERT_EQ(a.summary.min, a.best.z_paper);
    ASSERT_GE(a.summary.fraction_within_z_rand, 0.45);
  }
}

TEST(Bounds, Examples) {
  EXPECT_NEAR(ErrorBound(0, 1, 7).z_rand, std::log(14.0), 1e-12);
  const BoundReport r = ErrorBound(100, 5, 32);
  EXPECT_NEAR(std::log(64.0), 4.15888, 1e-5);
  EXPECT_NEAR(r.z_rand, 185.28, 0.01);
  EXPECT_EQ(RepeatsFor(0.1), 4);
  EXPECT_EQ(RepeatsFor(0.01), 7);
  EXPECT_EQ(RepeatsFor(0.5), 1);
  EXPECT_EQ(RepeatsFor(0.25), 2);
  ASSERT_EQ(r.repeats.size(), 3u);
  EXPECT_EQ(r.repeats[2].second, 10);
  EXPECT_THROW(ErrorBound(-1, 1, 1), ParameterError);
  EXPECT_THROW(RepeatsFor(0), ParameterError);
}

TEST(Bounds, Chernoff) {
  EXPECT_LT(ChernoffTail(5, 1e6, 3), 1e-100);
  EXPECT_NEAR(ChernoffTail(0, 1, 1), std::exp(-1.0), 1e-15);
  for (double z : {0.0, 1.0, 37.5, 100.0}) {
    for (int g : {1, 5, 15}) {
      for (int m : {1, 10, 32}) {
        const double lam = LambdaStar(z, g, m);
        EXPECT_NEAR(ChernoffTail(z, lam, g), 1.0 / (2 * m), 1e-9);
      }
    }
  }
  EXPECT_THROW(ChernoffTail(1, 0, 1), ParameterError);
  EXPECT_THROW(ChernoffTail(1, 1, -1), ParameterError);
}

}  // namespace
}  // namespace sbsp
