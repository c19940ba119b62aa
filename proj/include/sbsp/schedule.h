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

// Start-time schedules on the inverted timeline and the fleet-size
// machinery built on them.
//
// A route of length r starting in slot t occupies the closed slot span
// [t, t + r - 1]. The minimum fleet for fixed starts equals the maximum
// number of simultaneously active routes, and a sort-by-start interval
// partitioning attains it.

#ifndef SBSP_SCHEDULE_H_
#define SBSP_SCHEDULE_H_

#include <string>
#include <string_view>
#include <vector>

#include "sbsp/instance.h"

namespace sbsp {

struct StartSchedule {
  // starts[n][i] in [1, M] is the start slot of route i of school n.
  std::vector<std::vector<int>> starts;
  bool operator==(const StartSchedule&) const = default;
};

// Paper: loads over slots 1..M only, matching the load rows of the
// time-indexed formulation. Extended: slots 1..M+K_max-1, every active slot.
enum class HorizonMode { kPaper, kExtended };

std::string_view HorizonModeName(HorizonMode mode);
HorizonMode ParseHorizonMode(std::string_view name);

struct LoadProfile {
  std::vector<int> loads;  // loads[t-1] for slot t
  HorizonMode mode = HorizonMode::kPaper;
};

struct BusAssignment {
  std::vector<std::vector<int>> bus_of;  // parallel to StartSchedule::starts
  int bus_count = 0;
};

struct FeasibilityReport {
  bool ok = true;
  int school = -1;
  int route_a = -1;
  int route_b = -1;  // -1 when the violation concerns a single route
  std::string message;
};

struct ArrivalSchedule {
  std::vector<std::vector<int>> arrivals;  // M + 1 - start
  std::vector<int> school_start;           // s_n = latest arrival of school n
};

// Throws StructuralError on shape mismatch or a start outside [1, M].
void CheckShape(const Instance& inst, const StartSchedule& sched);

LoadProfile ComputeLoadProfile(const Instance& inst,
                               const StartSchedule& sched, HorizonMode mode);

int BusCount(const LoadProfile& profile);

// Convenience: BusCount(ComputeLoadProfile(inst, sched, mode)).
int MaxLoad(const Instance& inst, const StartSchedule& sched,
            HorizonMode mode);

// Interval partitioning. Routes are visited by (start, -length, school,
// route); each goes to the bus that frees up earliest if that bus's last
// route ends strictly before the new start, otherwise a new bus is opened.
// Throws FeasibilityError for an infeasible schedule.
BusAssignment AssignBuses(const Instance& inst, const StartSchedule& sched);

// ok iff every start lies in [1, M] and each school's start spread is at
// most l_n. Throws StructuralError only on shape mismatch.
FeasibilityReport CheckFeasible(const Instance& inst,
                                const StartSchedule& sched);

// Maps inverted starts t to arrival times M + 1 - t.
ArrivalSchedule ToArrivalView(const Instance& inst, const StartSchedule& sched);
StartSchedule FromArrivalView(const Instance& inst,
                              const ArrivalSchedule& arrivals);

// {"starts": [[int, ...], ...]}; the arrival export stores arrival times in
// "starts" and adds "view": "arrival".
std::string ScheduleToJson(const StartSchedule& sched);
std::string ArrivalToJson(const ArrivalSchedule& arrivals);
// Accepts either view; arrival documents are mapped back to starts.
StartSchedule ScheduleFromJson(const Instance& inst, std::string_view text);

}  // namespace sbsp

#endif  // SBSP_SCHEDULE_H_
