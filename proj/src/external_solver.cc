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

#include "sbsp/external_solver.h"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <unordered_map>

#include "sbsp/errors.h"
#include "sbsp/mps.h"

namespace sbsp {

std::string ExternalTemplate(std::string_view solver_spec) {
  constexpr std::string_view kPrefix = "cmd:";
  if (solver_spec.substr(0, kPrefix.size()) != kPrefix) return "";
  return std::string(solver_spec.substr(kPrefix.size()));
}

std::string ExpandTemplate(std::string_view tmpl, std::string_view mps_path,
                           std::string_view sol_path) {
  std::string out;
  size_t k = 0;
  while (k < tmpl.size()) {
    if (tmpl.substr(k, 5) == "{mps}") {
      out += mps_path;
      k += 5;
    } else if (tmpl.substr(k, 5) == "{sol}") {
      out += sol_path;
      k += 5;
    } else {
      out += tmpl[k++];
    }
  }
  return out;
}

std::vector<double> ParseSolution(const LpModel& model, std::string_view text) {
  std::unordered_map<std::string, int> index;
  for (int j = 0; j < model.num_vars(); ++j) index.emplace(model.var_name(j), j);
  std::vector<double> values(model.num_vars(), 0.0);
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string name;
    double v;
    if (!(fields >> name >> v)) continue;
    auto it = index.find(name);
    if (it != index.end()) values[it->second] = v;
  }
  return values;
}

LpSolution SolveExternal(const LpModel& model, std::string_view tmpl) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path();
  const std::string stem = "sbsp_" + std::to_string(::getpid()) + "_" +
                           std::to_string(counter++);
  const auto mps_path = dir / (stem + ".mps");
  const auto sol_path = dir / (stem + ".sol");
  {
    std::ofstream out(mps_path);
    out << ExportMps(model).text;
    if (!out) throw Error("cannot write " + mps_path.string());
  }
  const std::string command =
      ExpandTemplate(tmpl, mps_path.string(), sol_path.string());
  const int rc = std::system(command.c_str());
  LpSolution sol;
  sol.status = SolveStatus::kInfeasible;
  std::ifstream in(sol_path);
  if (rc == 0 && in) {
    std::stringstream buf;
    buf << in.rdbuf();
    sol.values = ParseSolution(model, buf.str());
    sol.objective = model.Objective(sol.values);
    sol.primal_feasible =
        !model.FindViolation(sol.values, kFeasibilityTol).has_value();
    if (sol.primal_feasible) sol.status = SolveStatus::kOptimal;
    sol.row_activity.resize(model.num_rows());
    for (int r = 0; r < model.num_rows(); ++r) {
      sol.row_activity[r] = model.RowActivity(r, sol.values);
    }
  }
  std::error_code ec;
  std::filesystem::remove(mps_path, ec);
  std::filesystem::remove(sol_path, ec);
  return sol;
}

}  // namespace sbsp
