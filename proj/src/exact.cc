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

#include "sbsp/exact.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "sbsp/errors.h"

namespace sbsp {
namespace {

struct RouteRef {
  int school;
  int route;
  int length;
  bool same_as_previous;  // identical length to the previous route of the school
};

class Search {
 public:
  Search(const Instance& inst, HorizonMode mode, const ExactLimits& limits)
      : inst_(inst), limits_(limits) {
    horizon_ = mode == HorizonMode::kPaper
                   ? inst.num_slots
                   : inst.num_slots + DerivedStats(inst).k_max - 1;
    loads_.assign(horizon_, 0);
    std::vector<int> order(inst.num_schools());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return inst.schools[a].num_routes() > inst.schools[b].num_routes();
    });
    for (int n : order) {
      const School& s = inst.schools[n];
      std::vector<int> routes(s.num_routes());
      std::iota(routes.begin(), routes.end(), 0);
      std::stable_sort(routes.begin(), routes.end(), [&](int a, int b) {
        return s.route_lengths[a] > s.route_lengths[b];
      });
      for (size_t k = 0; k < routes.size(); ++k) {
        const int len = s.route_lengths[routes[k]];
        const bool same =
            k > 0 && s.route_lengths[routes[k - 1]] == len;
        refs_.push_back({n, routes[k], len, same});
      }
    }
    current_.starts.resize(inst.num_schools());
    for (int n = 0; n < inst.num_schools(); ++n) {
      current_.starts[n].assign(inst.schools[n].num_routes(), 0);
    }
  }

  void Run(int incumbent, const StartSchedule& witness) {
    best_ = incumbent;
    best_schedule_ = witness;
    exhausted_ = false;
    if (best_ > 1) Dfs(0, 0, 0, 0);
  }

  int best() const { return best_; }
  const StartSchedule& best_schedule() const { return best_schedule_; }
  int64_t nodes() const { return nodes_; }
  bool exhausted() const { return exhausted_; }

 private:
  // lo/hi: running min/max start of the current school (0 when empty).
  void Dfs(size_t k, int max_load, int lo, int hi) {
    if (exhausted_) return;
    if (k == refs_.size()) {
      best_ = max_load;
      best_schedule_ = current_;
      return;
    }
    const RouteRef& ref = refs_[k];
    const bool new_school = k == 0 || refs_[k - 1].school != ref.school;
    if (new_school) lo = hi = 0;
    const int window = inst_.schools[ref.school].window;
    int first = 1, last = inst_.num_slots;
    if (!new_school) {
      first = std::max(first, hi - window);
      last = std::min(last, lo + window);
    }
    if (ref.same_as_previous && !new_school) {
      const auto& starts = current_.starts[ref.school];
      first = std::max(first, starts[refs_[k - 1].route]);
    }
    for (int t = first; t <= last; ++t) {
      if (++nodes_ > limits_.node_budget) {
        exhausted_ = true;
        return;
      }
      const int end = std::min(t + ref.length - 1, horizon_);
      int peak = max_load;
      for (int u = t; u <= end; ++u) peak = std::max(peak, loads_[u - 1] + 1);
      if (peak >= best_) continue;
      for (int u = t; u <= end; ++u) ++loads_[u - 1];
      current_.starts[ref.school][ref.route] = t;
      Dfs(k + 1, peak, new_school ? t : std::min(lo, t),
          new_school ? t : std::max(hi, t));
      for (int u = t; u <= end; ++u) --loads_[u - 1];
      if (exhausted_ || best_ <= 1) return;
    }
  }

  const Instance& inst_;
  ExactLimits limits_;
  int horizon_ = 0;
  std::vector<RouteRef> refs_;
  std::vector<int> loads_;
  StartSchedule current_;
  StartSchedule best_schedule_;
  int best_ = 0;
  int64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

bool WithinExactLimits(const Instance& inst, const ExactLimits& limits) {
  return DerivedStats(inst).total_routes <= limits.max_total_routes &&
         inst.num_slots <= limits.max_slots;
}

ExactResult ExactOpt(const Instance& inst, HorizonMode mode,
                     const ExactLimits& limits,
                     const StartSchedule* incumbent) {
  ValidateInstance(inst);
  if (!limits.override_size_guard && !WithinExactLimits(inst, limits)) {
    throw SizeError("exact search limited to " +
                    std::to_string(limits.max_total_routes) + " routes and " +
                    std::to_string(limits.max_slots) + " slots; instance has " +
                    std::to_string(DerivedStats(inst).total_routes) +
                    " routes and " + std::to_string(inst.num_slots) +
                    " slots");
  }
  StartSchedule start;
  bool have_start = false;
  if (incumbent) {
    try {
      have_start = CheckFeasible(inst, *incumbent).ok;
    } catch (const StructuralError&) {
      have_start = false;
    }
    if (have_start) start = *incumbent;
  }
  if (!have_start) {
    start.starts.clear();
    for (const School& s : inst.schools) {
      start.starts.emplace_back(s.num_routes(), 1);
    }
  }
  Search search(inst, mode, limits);
  search.Run(MaxLoad(inst, start, mode), start);
  ExactResult result;
  result.opt = search.best();
  result.schedule = search.best_schedule();
  result.nodes_explored = search.nodes();
  result.mode = mode;
  result.optimal = !search.exhausted();
  return result;
}

std::vector<std::vector<int>> EnumerateSchoolPoints(const School& school,
                                                    int num_slots,
                                                    bool override_guard) {
  const int gamma = school.num_routes();
  if (!override_guard && (gamma > 3 || num_slots > 5)) {
    throw SizeError("school enumeration limited to 3 routes and 5 slots");
  }
  if (gamma < 1 || num_slots < 1) {
    throw ParameterError("school enumeration needs routes and slots");
  }
  std::vector<std::vector<int>> points;
  std::vector<int> t(gamma, 1);
  while (true) {
    const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
    if (*hi - *lo <= school.window) points.push_back(t);
    int k = gamma - 1;
    while (k >= 0 && t[k] == num_slots) t[k--] = 1;
    if (k < 0) break;
    ++t[k];
  }
  return points;
}

}  // namespace sbsp
