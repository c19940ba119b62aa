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

#include "sbsp/schedule.h"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <queue>
#include <string>
#include <tuple>
#include <utility>

#include "json.hpp"
#include "sbsp/errors.h"

namespace sbsp {

using nlohmann::json;

std::string_view HorizonModeName(HorizonMode mode) {
  return mode == HorizonMode::kPaper ? "paper" : "extended";
}

HorizonMode ParseHorizonMode(std::string_view name) {
  if (name == "paper") return HorizonMode::kPaper;
  if (name == "extended") return HorizonMode::kExtended;
  throw ParameterError("unknown horizon mode \"" + std::string(name) + "\"");
}

void CheckShape(const Instance& inst, const StartSchedule& sched) {
  if (static_cast<int>(sched.starts.size()) != inst.num_schools()) {
    throw StructuralError("schedule has " +
                          std::to_string(sched.starts.size()) +
                          " schools, instance has " +
                          std::to_string(inst.num_schools()));
  }
  for (int n = 0; n < inst.num_schools(); ++n) {
    if (static_cast<int>(sched.starts[n].size()) !=
        inst.schools[n].num_routes()) {
      throw StructuralError("school " + std::to_string(n) + ": schedule has " +
                            std::to_string(sched.starts[n].size()) +
                            " routes, instance has " +
                            std::to_string(inst.schools[n].num_routes()));
    }
  }
}

namespace {

void CheckStartsInRange(const Instance& inst, const StartSchedule& sched) {
  for (int n = 0; n < inst.num_schools(); ++n) {
    for (size_t i = 0; i < sched.starts[n].size(); ++i) {
      const int t = sched.starts[n][i];
      if (t < 1 || t > inst.num_slots) {
        throw StructuralError("school " + std::to_string(n) + " route " +
                              std::to_string(i) + ": start " +
                              std::to_string(t) + " outside [1, " +
                              std::to_string(inst.num_slots) + "]");
      }
    }
  }
}

}  // namespace

LoadProfile ComputeLoadProfile(const Instance& inst,
                               const StartSchedule& sched, HorizonMode mode) {
  CheckShape(inst, sched);
  CheckStartsInRange(inst, sched);
  const int horizon = mode == HorizonMode::kPaper
                          ? inst.num_slots
                          : inst.num_slots + DerivedStats(inst).k_max - 1;
  // Difference array over slots 1..horizon+1.
  std::vector<int> diff(horizon + 2, 0);
  for (int n = 0; n < inst.num_schools(); ++n) {
    const School& school = inst.schools[n];
    for (int i = 0; i < school.num_routes(); ++i) {
      const int first = sched.starts[n][i];
      const int last = std::min(first + school.route_lengths[i] - 1, horizon);
      ++diff[first];
      --diff[last + 1];
    }
  }
  LoadProfile profile;
  profile.mode = mode;
  profile.loads.resize(horizon);
  int running = 0;
  for (int t = 1; t <= horizon; ++t) {
    running += diff[t];
    profile.loads[t - 1] = running;
  }
  return profile;
}

int BusCount(const LoadProfile& profile) {
  int best = 0;
  for (int v : profile.loads) best = std::max(best, v);
  return best;
}

int MaxLoad(const Instance& inst, const StartSchedule& sched,
            HorizonMode mode) {
  return BusCount(ComputeLoadProfile(inst, sched, mode));
}

FeasibilityReport CheckFeasible(const Instance& inst,
                                const StartSchedule& sched) {
  CheckShape(inst, sched);
  FeasibilityReport report;
  for (int n = 0; n < inst.num_schools(); ++n) {
    const auto& starts = sched.starts[n];
    for (size_t i = 0; i < starts.size(); ++i) {
      if (starts[i] < 1 || starts[i] > inst.num_slots) {
        report.ok = false;
        report.school = n;
        report.route_a = static_cast<int>(i);
        report.message = "school " + std::to_string(n) + " route " +
                         std::to_string(i) + ": start " +
                         std::to_string(starts[i]) + " outside [1, " +
                         std::to_string(inst.num_slots) + "]";
        return report;
      }
    }
    const int window = inst.schools[n].window;
    for (size_t i = 0; i < starts.size(); ++i) {
      for (size_t j = i + 1; j < starts.size(); ++j) {
        const int spread = std::abs(starts[i] - starts[j]);
        if (spread > window) {
          report.ok = false;
          report.school = n;
          report.route_a = static_cast<int>(i);
          report.route_b = static_cast<int>(j);
          report.message = "school " + std::to_string(n) + ": routes " +
                           std::to_string(i) + " and " + std::to_string(j) +
                           " start " + std::to_string(spread) +
                           " slots apart, window is " + std::to_string(window);
          return report;
        }
      }
    }
  }
  return report;
}

BusAssignment AssignBuses(const Instance& inst, const StartSchedule& sched) {
  const FeasibilityReport report = CheckFeasible(inst, sched);
  if (!report.ok) throw FeasibilityError(report.message);

  struct Item {
    int start, length, school, route;
  };
  std::vector<Item> items;
  for (int n = 0; n < inst.num_schools(); ++n) {
    for (int i = 0; i < inst.schools[n].num_routes(); ++i) {
      items.push_back(
          {sched.starts[n][i], inst.schools[n].route_lengths[i], n, i});
    }
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return std::make_tuple(a.start, -a.length, a.school, a.route) <
           std::make_tuple(b.start, -b.length, b.school, b.route);
  });

  BusAssignment out;
  out.bus_of.resize(inst.num_schools());
  for (int n = 0; n < inst.num_schools(); ++n) {
    out.bus_of[n].assign(inst.schools[n].num_routes(), -1);
  }
  // (last occupied slot, bus index); earliest-free bus on top.
  using Entry = std::pair<int, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> free_at;
  for (const Item& item : items) {
    int bus;
    if (!free_at.empty() && free_at.top().first < item.start) {
      bus = free_at.top().second;
      free_at.pop();
    } else {
      bus = out.bus_count++;
    }
    out.bus_of[item.school][item.route] = bus;
    free_at.push({item.start + item.length - 1, bus});
  }
  return out;
}

ArrivalSchedule ToArrivalView(const Instance& inst,
                              const StartSchedule& sched) {
  const FeasibilityReport report = CheckFeasible(inst, sched);
  if (!report.ok) throw FeasibilityError(report.message);
  ArrivalSchedule out;
  out.arrivals.resize(inst.num_schools());
  out.school_start.resize(inst.num_schools());
  for (int n = 0; n < inst.num_schools(); ++n) {
    int latest = 0;
    for (int t : sched.starts[n]) {
      const int arrival = inst.num_slots + 1 - t;
      out.arrivals[n].push_back(arrival);
      latest = std::max(latest, arrival);
    }
    out.school_start[n] = latest;
  }
  return out;
}

StartSchedule FromArrivalView(const Instance& inst,
                              const ArrivalSchedule& arrivals) {
  StartSchedule sched;
  for (const auto& school : arrivals.arrivals) {
    std::vector<int> starts;
    for (int a : school) starts.push_back(inst.num_slots + 1 - a);
    sched.starts.push_back(std::move(starts));
  }
  return sched;
}

std::string ScheduleToJson(const StartSchedule& sched) {
  json doc;
  doc["starts"] = sched.starts;
  return doc.dump();
}

std::string ArrivalToJson(const ArrivalSchedule& arrivals) {
  json doc;
  doc["starts"] = arrivals.arrivals;
  doc["view"] = "arrival";
  return doc.dump();
}

StartSchedule ScheduleFromJson(const Instance& inst, std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("schedule: malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("starts") ||
      !doc["starts"].is_array()) {
    throw SchemaError("schedule: missing field \"starts\"");
  }
  std::vector<std::vector<int>> rows;
  try {
    rows = doc["starts"].get<std::vector<std::vector<int>>>();
  } catch (const json::exception&) {
    throw SchemaError("schedule: field \"starts\" must be a list of int lists");
  }
  bool arrival = false;
  if (auto it = doc.find("view"); it != doc.end()) {
    if (*it == "arrival") {
      arrival = true;
    } else if (*it != "start") {
      throw SchemaError("schedule: field \"view\" must be \"arrival\"");
    }
  }
  StartSchedule sched{std::move(rows)};
  if (arrival) {
    ArrivalSchedule view;
    view.arrivals = sched.starts;
    sched = FromArrivalView(inst, view);
  }
  CheckShape(inst, sched);
  return sched;
}

}  // namespace sbsp
