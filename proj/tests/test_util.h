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

// Shared helpers for the test binaries.

#ifndef SBSP_TESTS_TEST_UTIL_H_
#define SBSP_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "sbsp/instance.h"
#include "sbsp/rng.h"
#include "sbsp/schedule.h"

namespace sbsp::testing {

struct TinyBounds {
  int max_schools = 3;
  int max_slots = 6;
  int max_routes = 3;   // per school
  int max_length = 3;   // route length
  int max_window = 2;
  int max_total_routes = 9;
};

// Uniform tiny instance; total routes capped by bounds.max_total_routes.
inline Instance RandomTinyInstance(Rng& rng, const TinyBounds& b = {}) {
  const int m = static_cast<int>(rng.UniformInt(1, b.max_slots));
  const int n = static_cast<int>(rng.UniformInt(1, b.max_schools));
  std::vector<School> schools;
  int budget = b.max_total_routes;
  for (int k = 0; k < n; ++k) {
    School s;
    s.window = static_cast<int>(rng.UniformInt(0, b.max_window));
    const int cap = std::max(1, std::min(b.max_routes, budget - (n - k - 1)));
    const int g = static_cast<int>(rng.UniformInt(1, cap));
    budget -= g;
    for (int i = 0; i < g; ++i) {
      s.route_lengths.push_back(
          static_cast<int>(rng.UniformInt(1, std::min(b.max_length, m))));
    }
    schools.push_back(std::move(s));
  }
  return MakeInstance(m, std::move(schools));
}

// Calls f on every start schedule with starts in [1, M] (feasible or not).
inline void ForEachSchedule(const Instance& inst,
                            const std::function<void(const StartSchedule&)>& f) {
  StartSchedule s;
  std::vector<int*> cells;
  for (const School& school : inst.schools) {
    s.starts.emplace_back(school.num_routes(), 1);
  }
  for (auto& row : s.starts) {
    for (int& v : row) cells.push_back(&v);
  }
  while (true) {
    f(s);
    size_t k = 0;
    while (k < cells.size() && *cells[k] == inst.num_slots) *cells[k++] = 1;
    if (k == cells.size()) return;
    ++*cells[k];
  }
}

// Brute-force load count straight from the definition.
inline int DefinitionLoad(const Instance& inst, const StartSchedule& s,
                          int slot) {
  int count = 0;
  for (int n = 0; n < inst.num_schools(); ++n) {
    for (int i = 0; i < inst.schools[n].num_routes(); ++i) {
      const int t = s.starts[n][i];
      const int r = inst.schools[n].route_lengths[i];
      if (t <= slot && slot <= t + r - 1) ++count;
    }
  }
  return count;
}

inline bool SpreadOk(const Instance& inst, const StartSchedule& s) {
  for (int n = 0; n < inst.num_schools(); ++n) {
    for (int a : s.starts[n]) {
      for (int b : s.starts[n]) {
        if (std::abs(a - b) > inst.schools[n].window) return false;
      }
    }
  }
  return true;
}

// Brute-force optimum over every feasible schedule using the extended
// (true interval) count.
inline int BruteForceOpt(const Instance& inst, bool ssp = false) {
  int best = 1 << 30;
  const Instance target = ssp ? AsSsp(inst) : inst;
  ForEachSchedule(target, [&](const StartSchedule& s) {
    if (!SpreadOk(target, s)) return;
    int peak = 0;
    for (int t = 1; t <= target.num_slots + DerivedStats(target).k_max; ++t) {
      peak = std::max(peak, DefinitionLoad(target, s, t));
    }
    best = std::min(best, peak);
  });
  return best;
}

}  // namespace sbsp::testing

#endif  // SBSP_TESTS_TEST_UTIL_H_
