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

#include "sbsp/greedy.h"

#include <algorithm>

#include "sbsp/errors.h"

namespace sbsp {

GreedyOutcome GreedySchedule(const Instance& inst, int opt_guess) {
  ValidateInstance(inst);
  if (opt_guess < 1) throw ParameterError("opt_guess must be >= 1");
  const int num_slots = inst.num_slots;

  GreedyOutcome out;
  out.final_loads.mode = HorizonMode::kPaper;
  std::vector<int>& load = out.final_loads.loads;
  load.assign(num_slots, 0);
  out.schedule.starts.resize(inst.num_schools());
  for (int n = 0; n < inst.num_schools(); ++n) {
    out.schedule.starts[n].assign(inst.schools[n].num_routes(), 0);
  }

  int slot = 1;
  for (int n = 0; n < inst.num_schools(); ++n) {
    if (slot > num_slots) {
      out.status = GreedyStatus::kInfeasible;
      return out;
    }
    const School& school = inst.schools[n];
    std::fill(out.schedule.starts[n].begin(), out.schedule.starts[n].end(),
              slot);
    // Coverage is clipped at M.
    for (int r : school.route_lengths) {
      const int last = std::min(slot + r - 1, num_slots);
      for (int m = slot; m <= last; ++m) ++load[m - 1];
    }
    // First slot, scanning from 1, whose load is below the guess.
    slot = num_slots + 1;
    for (int m = 1; m <= num_slots; ++m) {
      if (load[m - 1] < opt_guess) {
        slot = m;
        break;
      }
    }
  }
  out.status = GreedyStatus::kFeasible;
  return out;
}

SearchResult GreedySearch(const Instance& inst) {
  ValidateInstance(inst);
  const InstanceStats stats = DerivedStats(inst);
  SearchResult result;
  result.gamma_max = stats.gamma_max;
  int lower = stats.gamma_max;
  int upper = inst.num_schools() * stats.gamma_max;
  bool lower_tested = false;

  while (upper - lower > 1) {
    const int guess = (lower + upper) / 2;
    const GreedyOutcome outcome = GreedySchedule(inst, guess);
    result.transcript.push_back({lower, upper, guess, outcome.status});
    if (outcome.status == GreedyStatus::kFeasible) {
      upper = guess;
    } else {
      lower = guess;
      lower_tested = true;
    }
  }
  // An untested L is the trivial bound Gamma_max; if the budget Gamma_max
  // itself is feasible it is the tightest possible output.
  if (!lower_tested && upper > lower) {
    const GreedyOutcome outcome = GreedySchedule(inst, lower);
    result.transcript.push_back({lower, upper, lower, outcome.status});
    if (outcome.status == GreedyStatus::kFeasible) {
      upper = lower;
    } else {
      lower_tested = true;
    }
  }

  const GreedyOutcome final_run = GreedySchedule(inst, upper);
  if (final_run.status != GreedyStatus::kFeasible) {
    // Unreachable: U is either N * Gamma_max or a budget that was feasible.
    throw Error("greedy search ended on an infeasible budget");
  }
  result.upper = upper;
  result.lower = lower;
  result.schedule = final_run.schedule;
  result.upper_bound = upper + stats.gamma_max;
  result.lower_bound =
      std::max(stats.gamma_max, (upper + stats.gamma_max + 2) / 3);
  result.infeasible_lower_bound = lower_tested ? lower / 2 + 1 : 0;
  return result;
}

}  // namespace sbsp
