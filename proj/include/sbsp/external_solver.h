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

// Bridge to an external LP solver run as a shell command.
//
// The template names the solver invocation with {mps} and {sol} standing
// for the model file written here and the solution file the command must
// write: one "<column name> <value>" pair per line. Lines that do not
// parse or name unknown columns are ignored; absent columns read as 0.

#ifndef SBSP_EXTERNAL_SOLVER_H_
#define SBSP_EXTERNAL_SOLVER_H_

#include <string>
#include <string_view>

#include "sbsp/lp_model.h"
#include "sbsp/simplex.h"

namespace sbsp {

// "cmd:<template>" -> "<template>"; empty for anything else.
std::string ExternalTemplate(std::string_view solver_spec);

// Substitutes every {mps} and {sol} occurrence.
std::string ExpandTemplate(std::string_view tmpl, std::string_view mps_path,
                           std::string_view sol_path);

// Parses a solution file body against the model's column names.
std::vector<double> ParseSolution(const LpModel& model, std::string_view text);

// Writes the model, runs the command, reads the solution back. The status
// is Optimal when the command exits 0 and the values satisfy the model
// within kFeasibilityTol, Infeasible otherwise. No basis or duals are
// reported. Throws Error when the files cannot be written or read.
LpSolution SolveExternal(const LpModel& model, std::string_view tmpl);

}  // namespace sbsp

#endif  // SBSP_EXTERNAL_SOLVER_H_
