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

// Exhaustive search for tiny instances.

#ifndef SBSP_EXACT_H_
#define SBSP_EXACT_H_

#include <cstdint>
#include <vector>

#include "sbsp/instance.h"
#include "sbsp/schedule.h"

namespace sbsp {

struct ExactLimits {
  int64_t node_budget = 50'000'000;
  int max_total_routes = 9;
  int max_slots = 6;
  bool override_size_guard = false;
};

struct ExactResult {
  int opt = 0;  // best bus count found; certified when `optimal`
  StartSchedule schedule;
  int64_t nodes_explored = 0;
  HorizonMode mode = HorizonMode::kPaper;
  bool optimal = false;
};

// True when the instance is within the default size guard of `limits`.
bool WithinExactLimits(const Instance& inst, const ExactLimits& limits = {});

// Depth-first search over route starts, schools by descending Gamma_n and
// routes by descending length, each school's starts kept within a window of
// width l_n around its running min/max. Branches whose partial maximum load
// reaches the incumbent are cut. The incumbent starts from `incumbent` when
// given (and feasible), else from the all-start-at-1 schedule. Throws
// SizeError outside the guard unless overridden.
ExactResult ExactOpt(const Instance& inst, HorizonMode mode,
                     const ExactLimits& limits = {},
                     const StartSchedule* incumbent = nullptr);

// All start vectors of one school with spread at most l, in lexicographic
// order. Throws SizeError for Gamma > 3 or M > 5 unless overridden.
std::vector<std::vector<int>> EnumerateSchoolPoints(const School& school,
                                                    int num_slots,
                                                    bool override_guard = false);

}  // namespace sbsp

#endif  // SBSP_EXACT_H_
