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

#include <fstream>
#include <sstream>

#include "sbsp/errors.h"
#include "sbsp/mps.h"
#include "sbsp/simplex.h"
#include "test_util.h"

namespace sbsp {
namespace {

std::string ReadGolden(const std::string& name) {
  std::ifstream in(std::string(SBSP_GOLDEN_DIR) + "/" + name);
  EXPECT_TRUE(in) << "missing golden file " << name;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Export, GoldenFixedFormat) {
  // Short names throughout, so fixed columns are used.
  const Instance inst = MakeInstance(2, {School{0, {1, 1}}, School{0, {2}}});
  const MpsExport out = ExportMps(BuildSspLp(inst));
  EXPECT_FALSE(out.free_format);
  EXPECT_TRUE(out.warnings.empty());
  EXPECT_EQ(out.text, ReadGolden("ssp_tiny.mps"));
}

TEST(Export, GoldenFreeFormat) {
  const Instance inst = MakeInstance(3, {School{1, {1, 1}}});
  const MpsExport out = ExportMps(BuildLp3s(inst));
  EXPECT_TRUE(out.free_format);
  ASSERT_EQ(out.warnings.size(), 1u);
  EXPECT_EQ(out.text.rfind("* WARNING", 0), 0u);
  EXPECT_EQ(out.text, ReadGolden("lp3s_tiny.mps"));
}

TEST(Export, NoWindowRows) {
  const Instance inst = MakeInstance(3, {School{1, {2}}, School{0, {1}}});
  const LpModel model = BuildLp3s(inst);
  ASSERT_EQ(model.CountRows(RowFamily::kWindowS), 0);
  const std::string text = ExportMps(model).text;
  EXPECT_EQ(text.find("WIN"), std::string::npos);
  const LpModel back = ImportMps(text);
  EXPECT_EQ(back.num_rows(), model.num_rows());
  EXPECT_EQ(back.num_vars(), model.num_vars());
  EXPECT_NEAR(Solve(back).objective, Solve(model).objective, 1e-9);
}

TEST(RoundTrip, RandomTinyModels) {
  Rng rng(31);
  for (int k = 0; k < 20; ++k) {
    const Instance inst = testing::RandomTinyInstance(rng);
    const WindowRows w = k % 2 ? WindowRows::kAggregated : WindowRows::kPairwise;
    const LpModel model = BuildLp3s(inst, {HorizonMode::kPaper, w});
    const LpModel back = ImportMps(ExportMps(model).text);
    ASSERT_EQ(back.num_vars(), model.num_vars());
    ASSERT_EQ(back.num_rows(), model.num_rows());
    for (int j = 0; j < model.num_vars(); ++j) {
      ASSERT_EQ(back.var_name(j), model.var_name(j));
      ASSERT_EQ(back.lower(j), model.lower(j));
      ASSERT_EQ(back.upper(j), model.upper(j));
      ASSERT_EQ(back.cost(j), model.cost(j));
      ASSERT_EQ(back.KeyOf(j), model.KeyOf(j));
    }
    for (int r = 0; r < model.num_rows(); ++r) {
      ASSERT_EQ(back.row(r).family, model.row(r).family);
    }
    const LpSolution a = Solve(model), b = Solve(back);
    ASSERT_EQ(a.status, SolveStatus::kOptimal);
    ASSERT_EQ(b.status, SolveStatus::kOptimal);
    ASSERT_NEAR(a.objective, b.objective, 1e-6);
  }
}

TEST(Import, ForeignSections) {
  // RANGES, MARKER lines, assorted bound types.
  const std::string text =
      "NAME          TEST\n"
      "ROWS\n"
      " N  COST\n"
      " G  LIM1\n"
      " L  LIM2\n"
      " E  MYEQN\n"
      "COLUMNS\n"
      "    MARKER    'MARKER'    'INTORG'\n"
      "    X1        COST         1.0   LIM1         1.0\n"
      "    X1        LIM2         1.0\n"
      "    MARKER    'MARKER'    'INTEND'\n"
      "    X2        COST         2.0   LIM1         1.0\n"
      "    X2        MYEQN       -1.0\n"
      "    X3        COST        -1.0   MYEQN        1.0\n"
      "RHS\n"
      "    RHS       LIM1         2.0   LIM2         4.0\n"
      "    RHS       MYEQN        7.0\n"
      "RANGES\n"
      "    RNG       LIM1         2.0\n"
      "BOUNDS\n"
      " UP BND       X1           4.0\n"
      " LO BND       X2          -1.0\n"
      " UP BND       X2           1.0\n"
      " MI BND       X3\n"
      " UP BND       X3           9.0\n"
      "ENDATA\n";
  const LpModel model = ImportMps(text);
  EXPECT_EQ(model.num_vars(), 3);
  EXPECT_EQ(model.num_rows(), 4);  // LIM1 split into two rows
  EXPECT_EQ(model.lower(2), -kInf);
  EXPECT_EQ(model.upper(2), 9.0);
  const LpSolution sol = Solve(model);
  ASSERT_EQ(sol.status, SolveStatus::kOptimal);
  // x3 = 7 + x2; cost x1 + 2x2 - x3 = x1 + x2 - 7 with 2 <= x1 + x2 <= 4.
  EXPECT_NEAR(sol.objective, -5.0, 1e-9);
}

TEST(Import, Malformed) {
  EXPECT_THROW(ImportMps("ROWS\n N OBJ\nCOLUMNS\n x OBJ abc\nENDATA\n"),
               SchemaError);
  EXPECT_THROW(ImportMps("ROWS\n N OBJ\nCOLUMNS\n x NOPE 1\nENDATA\n"),
               SchemaError);
}

TEST(Names, Parse) {
  EXPECT_EQ(ParseVarName("S_2_3_4"), (VarKey{VarFamily::kS, 1, 2, 4}));
  EXPECT_EQ(ParseVarName("y_1_2"), (VarKey{VarFamily::kY, 0, -1, 2}));
  EXPECT_EQ(ParseVarName("z"), (VarKey{VarFamily::kZ}));
  EXPECT_FALSE(ParseVarName("foo"));
}

}  // namespace
}  // namespace sbsp
