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

#include <algorithm>
#include <cmath>

#include "sbsp/errors.h"
#include "sbsp/exact.h"
#include "sbsp/lp_model.h"
#include "sbsp/simplex.h"
#include "test_util.h"

namespace sbsp {
namespace {

double MaxLoadRow(const LpModel& model, std::vector<double> values,
                  RowFamily family) {
  const int z = model.Column(VarKey{VarFamily::kZ});
  values[z] = 0.0;
  double best = -kInf;
  for (int r = 0; r < model.num_rows(); ++r) {
    if (model.row(r).family == family) {
      best = std::max(best, model.RowActivity(r, values));
    }
  }
  return best;
}

TEST(Tally, SmallExample) {
  const Instance inst = MakeInstance(3, {School{1, {1, 1}}});
  const LpModel model = BuildLp3s(inst);
  EXPECT_EQ(model.num_vars(), 7);  // 6 S + z
  EXPECT_EQ(model.CountRows(RowFamily::kMonotone), 4);
  EXPECT_EQ(model.CountRows(RowFamily::kTerminal), 2);
  // Only m~=1 survives: at m~=2 the right side is S^(3) = 1.
  EXPECT_EQ(model.CountRows(RowFamily::kWindowS), 2);
  EXPECT_EQ(model.CountRows(RowFamily::kLoadS), 3);
  const RowTally t = Lp3sRowTally(inst, HorizonMode::kPaper);
  EXPECT_EQ(t.window, 2);
  EXPECT_EQ(t.total(), model.num_rows());
}

TEST(Tally, SingleRouteAndWideWindow) {
  EXPECT_EQ(BuildLp3s(MakeInstance(4, {School{1, {2}}}))
                .CountRows(RowFamily::kWindowS),
            0);
  const Instance wide = MakeInstance(5, {School{4, {1, 2, 3}}, School{4, {1, 1}}});
  EXPECT_EQ(BuildLp3s(wide).CountRows(RowFamily::kWindowS), 0);
  EXPECT_EQ(Lp3sRowTally(wide, HorizonMode::kPaper).window, 0);
}

TEST(Tally, RandomMatchesEnumeration) {
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    testing::TinyBounds b;
    b.max_routes = 5;
    b.max_total_routes = 12;
    b.max_window = 4;
    const Instance inst = testing::RandomTinyInstance(rng, b);
    for (HorizonMode mode : {HorizonMode::kPaper, HorizonMode::kExtended}) {
      for (WindowRows w : {WindowRows::kPairwise, WindowRows::kAggregated}) {
        const LpModel model = BuildLp3s(inst, {mode, w});
        const RowTally t = Lp3sRowTally(inst, mode, w);
        // Independent count: ordered pairs and slots whose right-hand index
        // is a real, non-terminal slot.
        int64_t window = 0, monotone = 0, terminal = 0;
        for (const School& s : inst.schools) {
          const int g = s.num_routes();
          for (int mt = 1; mt <= inst.num_slots; ++mt) {
            if (mt + s.window > inst.num_slots - 1) continue;
            window += (w == WindowRows::kAggregated && g >= 4) ? 2 * g
                                                               : g * (g - 1);
          }
          monotone += g * (inst.num_slots - 1);
          terminal += g;
        }
        ASSERT_EQ(t.window, window);
        ASSERT_EQ(t.monotone, monotone);
        ASSERT_EQ(t.terminal, terminal);
        ASSERT_EQ(model.CountRows(RowFamily::kWindowS), window);
        ASSERT_EQ(model.CountRows(RowFamily::kMonotone), monotone);
        ASSERT_EQ(model.CountRows(RowFamily::kTerminal), terminal);
        ASSERT_EQ(model.CountRows(RowFamily::kLoadS),
                  LoadHorizon(inst, mode));
      }
    }
  }
}

TEST(SspLp, Examples) {
  const Instance a = MakeInstance(2, {School{0, {1, 1, 1}}});
  const LpModel ma = BuildSspLp(a);
  EXPECT_EQ(ma.num_vars(), 3);
  const LpSolution sa = Solve(ma);
  ASSERT_EQ(sa.status, SolveStatus::kOptimal);
  EXPECT_NEAR(sa.objective, 1.5, 1e-9);
  const FractionalSchedule fa = ExtractFractional(ma, sa.values);
  for (const auto& x : fa.x[0]) {
    EXPECT_NEAR(x[0], 0.5, 1e-9);
    EXPECT_NEAR(x[1], 0.5, 1e-9);
  }

  const LpSolution sb = Solve(BuildSspLp(MakeInstance(1, {School{0, {1}}})));
  EXPECT_NEAR(sb.objective, 1.0, 1e-9);

  const LpSolution sc = Solve(
      BuildSspLp(MakeInstance(2, {School{0, {1}}, School{0, {1}}})));
  EXPECT_NEAR(sc.objective, 1.0, 1e-9);
}

TEST(Transforms, Examples) {
  const std::vector<double> s{0.2, 0.2, 1.0};
  const std::vector<double> x = XFromS(s);
  EXPECT_NEAR(x[0], 0.2, 1e-15);
  EXPECT_NEAR(x[1], 0.0, 1e-15);
  EXPECT_NEAR(x[2], 0.8, 1e-15);
  EXPECT_EQ(SFromX(std::vector<double>{1, 0, 0}),
            (std::vector<double>{1, 1, 1}));
  EXPECT_THROW(XFromS(std::vector<double>{0.5, 0.4, 1.0}), NumericalError);
  EXPECT_THROW(SFromX(std::vector<double>{0.5, -0.1, 0.6}), NumericalError);
}

TEST(Transforms, RoundTripRandomSimplex) {
  Rng rng(3);
  for (int k = 0; k < 1000; ++k) {
    const int m = static_cast<int>(rng.UniformInt(1, 12));
    std::vector<double> x(m);
    double sum = 0;
    for (double& v : x) sum += (v = rng.Uniform01());
    for (double& v : x) v /= sum;
    const std::vector<double> back = XFromS(SFromX(x));
    for (int t = 0; t < m; ++t) ASSERT_NEAR(back[t], x[t], 1e-12);
  }
}

TEST(Extract, IntegralVertexGivesUnitVectors) {
  const Instance inst = MakeInstance(4, {School{1, {2, 1}}, School{0, {3}}});
  const StartSchedule sched{{{2, 3}, {1}}};
  const LpModel model = BuildLp3s(inst);
  const std::vector<double> point = PointFromSchedule(model, inst, sched);
  ASSERT_FALSE(model.FindViolation(point, 1e-12));
  const FractionalSchedule frac = ExtractFractional(model, point);
  for (int n = 0; n < 2; ++n) {
    for (size_t i = 0; i < frac.x[n].size(); ++i) {
      for (int m = 1; m <= 4; ++m) {
        EXPECT_EQ(frac.x[n][i][m - 1], m == sched.starts[n][i] ? 1.0 : 0.0);
      }
    }
  }
  EXPECT_EQ(frac.objective, MaxLoad(inst, sched, HorizonMode::kPaper));
}

TEST(Extract, DriftIsRenormalized) {
  const Instance inst = MakeInstance(2, {School{0, {1}}});
  const LpModel model = BuildLp3s(inst);
  std::vector<double> v(model.num_vars(), 0.0);
  v[model.Column({VarFamily::kS, 0, 0, 1})] = 0.5;
  v[model.Column({VarFamily::kS, 0, 0, 2})] = 1.0 - 5e-10;
  v[model.Column({VarFamily::kZ})] = 1.0;
  const FractionalSchedule frac = ExtractFractional(model, v);
  EXPECT_DOUBLE_EQ(frac.s[0][0][1], 1.0);
  EXPECT_NEAR(frac.x[0][0][0] + frac.x[0][0][1], 1.0, 1e-15);

  v[model.Column({VarFamily::kS, 0, 0, 2})] = 0.9;
  try {
    ExtractFractional(model, v);
    FAIL() << "expected ExtractionError";
  } catch (const ExtractionError& e) {
    EXPECT_NE(std::string(e.what()).find("TRM_1_1"), std::string::npos)
        << e.what();
  }
}

// Random convex combination of integral feasible schedules.
std::vector<std::vector<std::vector<double>>> RandomFractionalX(
    const Instance& inst, Rng& rng) {
  std::vector<std::vector<std::vector<double>>> x(inst.num_schools());
  for (int n = 0; n < inst.num_schools(); ++n) {
    const School& s = inst.schools[n];
    const auto points = EnumerateSchoolPoints(s, inst.num_slots, true);
    x[n].assign(s.num_routes(), std::vector<double>(inst.num_slots, 0.0));
    double total = 0;
    std::vector<double> w(points.size());
    for (double& v : w) total += (v = rng.Uniform01() < 0.4 ? rng.Uniform01() : 0);
    if (total == 0) {
      w[0] = total = 1;
    }
    for (size_t p = 0; p < points.size(); ++p) {
      for (int i = 0; i < s.num_routes(); ++i) {
        x[n][i][points[p][i] - 1] += w[p] / total;
      }
    }
  }
  return x;
}

TEST(Equivalence, PrefixSumBijection) {
  Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    const Instance inst = testing::RandomTinyInstance(rng);
    const LpModel xs = BuildLp3x(inst);
    const LpModel ss = BuildLp3s(inst);
    const auto x = RandomFractionalX(inst, rng);
    std::vector<double> vx(xs.num_vars(), 0.0), vs(ss.num_vars(), 0.0);
    double z = 0;
    for (int t = 1; t <= inst.num_slots; ++t) {
      double load = 0;
      for (int n = 0; n < inst.num_schools(); ++n) {
        for (int i = 0; i < inst.schools[n].num_routes(); ++i) {
          const int r = inst.schools[n].route_lengths[i];
          for (int m = std::max(1, t - r + 1); m <= t; ++m) load += x[n][i][m - 1];
        }
      }
      z = std::max(z, load);
    }
    for (int n = 0; n < inst.num_schools(); ++n) {
      for (int i = 0; i < inst.schools[n].num_routes(); ++i) {
        const std::vector<double> s = SFromX(x[n][i]);
        for (int m = 1; m <= inst.num_slots; ++m) {
          vx[xs.Column({VarFamily::kX, n, i, m})] = x[n][i][m - 1];
          vs[ss.Column({VarFamily::kS, n, i, m})] = s[m - 1];
        }
      }
    }
    vx[xs.Column({VarFamily::kZ})] = z;
    vs[ss.Column({VarFamily::kZ})] = z;
    ASSERT_FALSE(xs.FindViolation(vx, 1e-9)) << *xs.FindViolation(vx, 1e-9);
    ASSERT_FALSE(ss.FindViolation(vs, 1e-9)) << *ss.FindViolation(vs, 1e-9);
  }
}

TEST(Equivalence, InverseMapOfSolvedSPoints) {
  // S-space optimum mapped back to x-space stays feasible there.
  Rng rng(21);
  for (int k = 0; k < 40; ++k) {
    const Instance inst = testing::RandomTinyInstance(rng);
    const LpModel ss = BuildLp3s(inst);
    const LpModel xs = BuildLp3x(inst);
    const LpSolution sol = Solve(ss);
    ASSERT_EQ(sol.status, SolveStatus::kOptimal);
    std::vector<double> vx(xs.num_vars(), 0.0);
    for (int n = 0; n < inst.num_schools(); ++n) {
      for (int i = 0; i < inst.schools[n].num_routes(); ++i) {
        std::vector<double> s;
        for (int m = 1; m <= inst.num_slots; ++m) {
          s.push_back(sol.values[ss.Column({VarFamily::kS, n, i, m})]);
        }
        const std::vector<double> x = XFromS(s);
        for (int m = 1; m <= inst.num_slots; ++m) {
          vx[xs.Column({VarFamily::kX, n, i, m})] = x[m - 1];
        }
      }
    }
    vx[xs.Column({VarFamily::kZ})] = sol.objective;
    ASSERT_FALSE(xs.FindViolation(vx, 1e-7)) << *xs.FindViolation(vx, 1e-7);
  }
}

TEST(Equivalence, OptimaAgree) {
  Rng rng(99);
  for (int k = 0; k < 30; ++k) {
    const Instance inst = testing::RandomTinyInstance(rng);
    for (HorizonMode mode : {HorizonMode::kPaper, HorizonMode::kExtended}) {
      const LpModel ss = BuildLp3s(inst, {mode, WindowRows::kPairwise});
      const LpModel sa = BuildLp3s(inst, {mode, WindowRows::kAggregated});
      const LpModel xs = BuildLp3x(inst, mode);
      const LpSolution a = Solve(ss), b = Solve(sa), c = Solve(xs);
      ASSERT_EQ(a.status, SolveStatus::kOptimal);
      ASSERT_EQ(b.status, SolveStatus::kOptimal);
      ASSERT_EQ(c.status, SolveStatus::kOptimal);
      ASSERT_NEAR(a.objective, c.objective, 1e-6);
      ASSERT_NEAR(b.objective, c.objective, 1e-6);
      // z* is pinned by the heaviest load row.
      ASSERT_NEAR(MaxLoadRow(ss, a.values, RowFamily::kLoadS), a.objective,
                  1e-7);
      ASSERT_NEAR(MaxLoadRow(xs, c.values, RowFamily::kLoadX), c.objective,
                  1e-7);
    }
  }
}

TEST(Equivalence, AggregatedRowsOnLargerSchools) {
  const Instance inst = GenerateInstance({{8, 3, 6}, Family::kBase, 4});
  const LpSolution a = Solve(BuildLp3s(inst, {HorizonMode::kPaper,
                                              WindowRows::kPairwise}));
  const LpSolution b = Solve(BuildLp3s(inst, {HorizonMode::kPaper,
                                              WindowRows::kAggregated}));
  ASSERT_EQ(a.status, SolveStatus::kOptimal);
  ASSERT_EQ(b.status, SolveStatus::kOptimal);
  EXPECT_NEAR(a.objective, b.objective, 1e-6);
}

TEST(Build, SizeGuard) {
  LpBuildOptions opt;
  opt.max_rows = 10;
  EXPECT_THROW(BuildLp3s(MakeInstance(5, {School{0, {1, 1, 1}}}), opt),
               SizeError);
  opt.max_rows = 100'000'000;
  opt.warn_rows = 10;
  EXPECT_FALSE(BuildLp3s(MakeInstance(5, {School{0, {1, 1, 1}}}), opt)
                   .warnings.empty());
}

}  // namespace
}  // namespace sbsp
