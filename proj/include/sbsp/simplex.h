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

// Bounded two-phase revised primal simplex.
//
// Every row r gets a logical variable y_r = a_r x whose bounds encode the
// row sense, so the working system is [A | -I] (x, y) = 0 with bounds on all
// variables. The initial basis is all-logical. Phase 1 minimizes the sum of
// bound infeasibilities of the basic variables (composite costs), phase 2
// the model objective. Dantzig pricing, Harris two-pass ratio test with
// bound flips, Bland's rule after 50 consecutive degenerate pivots.

#ifndef SBSP_SIMPLEX_H_
#define SBSP_SIMPLEX_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sbsp/instance.h"
#include "sbsp/lp_model.h"

namespace sbsp {

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string_view SolveStatusName(SolveStatus status);

struct SolveLimits {
  int64_t max_iterations = 0;        // 0: 50 * (num_vars + num_rows)
  double time_budget_seconds = 0.0;  // 0: unlimited
};

struct LpSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<double> values;  // per column
  double objective = 0.0;
  // Basic variables, ascending. Index j < num_vars is column j, index
  // num_vars + r is the logical of row r.
  std::vector<int> basis;
  int64_t iterations = 0;
  bool primal_feasible = false;  // meaningful for kIterationLimit
  bool time_limited = false;
  std::vector<double> row_duals;      // y = c_B B^{-1}
  std::vector<double> reduced_costs;  // per column, c - A^T y
  std::vector<double> row_activity;
  double dual_objective = 0.0;
};

// `start`, if given, is a point (one value per column) to crash the initial
// basis from: columns at a bound stay nonbasic there, every other column
// replaces the logical of a row it touches that is tight at the point. A
// feasible start skips phase 1.
LpSolution Solve(const LpModel& model, const SolveLimits& limits = {},
                 std::span<const double> start = {});

// Vertex optimum of `costs` (one entry per column of
// BuildSchoolPolytope(school, num_slots)) over the single-school polytope.
LpSolution SolveVertexWithObjective(const School& school, int num_slots,
                                    std::span<const double> costs);

// Refactors the returned basis and checks that the basic values are
// reproduced from the nonbasic ones, which must sit at a bound.
bool VerifyBasic(const LpModel& model, const LpSolution& solution,
                 double tol = 1e-7);

}  // namespace sbsp

#endif  // SBSP_SIMPLEX_H_
