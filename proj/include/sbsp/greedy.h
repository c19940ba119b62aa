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

// Greedy 3-approximation for the school scheduling problem (all windows
// treated as zero: every route of a school starts in the school's slot).
//
// GreedySchedule packs schools one at a time into the first slot whose load
// is still below a bus budget guess; GreedySearch bisects on that guess.
// For the output budget U the optimum satisfies
//   (U + Gamma_max) / 3 <= OPT_SSP <= U + Gamma_max.

#ifndef SBSP_GREEDY_H_
#define SBSP_GREEDY_H_

#include <vector>

#include "sbsp/instance.h"
#include "sbsp/schedule.h"

namespace sbsp {

enum class GreedyStatus { kFeasible, kInfeasible };

struct GreedyOutcome {
  GreedyStatus status = GreedyStatus::kInfeasible;
  // Complete when Feasible. When Infeasible, schools that were never placed
  // have all starts set to 0.
  StartSchedule schedule;
  LoadProfile final_loads;  // the sweep array C over slots 1..M
};

GreedyOutcome GreedySchedule(const Instance& inst, int opt_guess);

struct SearchStep {
  int lower = 0;
  int upper = 0;
  int guess = 0;
  GreedyStatus status = GreedyStatus::kInfeasible;
};

struct SearchResult {
  int upper = 0;  // U
  int lower = 0;  // L
  int gamma_max = 0;
  StartSchedule schedule;  // Feasible schedule at budget U
  int upper_bound = 0;     // U + Gamma_max
  int lower_bound = 0;     // max(Gamma_max, ceil((U + Gamma_max) / 3))
  // OPT_SSP > L / 2 whenever L was shown infeasible; 0 if L never was.
  int infeasible_lower_bound = 0;
  std::vector<SearchStep> transcript;
};

SearchResult GreedySearch(const Instance& inst);

}  // namespace sbsp

#endif  // SBSP_GREEDY_H_
