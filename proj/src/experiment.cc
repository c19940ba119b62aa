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

#include "sbsp/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "sbsp/errors.h"
#include "sbsp/external_solver.h"
#include "sbsp/greedy.h"
#include "sbsp/rng.h"
#include "sbsp/rounding.h"
#include "sbsp/simplex.h"

namespace sbsp {
namespace {

using nlohmann::json;

constexpr uint64_t kRoundingStream = 0x726f756e64ULL;

template <typename T>
json Optional(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> ReadOptional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

std::optional<double> Mean(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

int ExperimentReport::failures() const {
  return static_cast<int>(std::count_if(
      rows.begin(), rows.end(), [](const InstanceRow& r) { return r.failed; }));
}

void ValidateConfig(const ExperimentConfig& config) {
  if (config.families.empty()) throw ParameterError("no families given");
  if (config.sizes.empty()) throw ParameterError("no sizes given");
  if (config.instances_per_cell < 1) {
    throw ParameterError("instances per cell must be >= 1");
  }
  if (config.trials < 1) throw ParameterError("trials must be >= 1");
  for (const std::string& size : config.sizes) ParseSizeLabel(size);
  if (config.solver != "bundled" && ExternalTemplate(config.solver).empty()) {
    throw ParameterError("solver must be \"bundled\" or \"cmd:<template>\"");
  }
}

uint64_t InstanceSeed(uint64_t seed, Family family, const SizeParams& size,
                      int index) {
  uint64_t s = StreamSeed(seed, static_cast<uint64_t>(family));
  s = StreamSeed(s, (static_cast<uint64_t>(size.num_slots) << 40) ^
                        (static_cast<uint64_t>(size.num_schools) << 20) ^
                        static_cast<uint64_t>(size.gamma_max));
  return StreamSeed(s, static_cast<uint64_t>(index));
}

void ComputeGaps(InstanceRow& row) {
  row.lp_gap.reset();
  row.rounding_gap.reset();
  row.total_gap.reset();
  const bool lp = row.lp_opt && *row.lp_opt > 0.0;
  if (lp && row.ip_opt) row.lp_gap = (*row.ip_opt - *row.lp_opt) / *row.lp_opt;
  if (row.ip_opt && *row.ip_opt > 0 && row.rounding) {
    row.rounding_gap =
        static_cast<double>(*row.rounding - *row.ip_opt) / *row.ip_opt;
  }
  if (lp && row.rounding) {
    row.total_gap = (*row.rounding - *row.lp_opt) / *row.lp_opt;
  }
}

InstanceRow RunInstance(const ExperimentConfig& config, Family family,
                        const std::string& size_label, int index) {
  const SizeParams size = ParseSizeLabel(size_label);
  InstanceRow row;
  row.family = std::string(FamilyName(family));
  row.size = size_label;
  row.instance = index;
  row.seed = InstanceSeed(config.seed, family, size, index);
  try {
    const Instance inst = GenerateInstance({size, family, row.seed});
    const InstanceStats stats = DerivedStats(inst);
    row.num_slots = inst.num_slots;
    row.num_schools = inst.num_schools();
    row.gamma_max = stats.gamma_max;
    row.total_routes = stats.total_routes;

    const SearchResult greedy = GreedySearch(inst);
    row.greedy_upper = greedy.upper;

    LpBuildOptions build;
    build.mode = config.mode;
    build.window_rows = config.window_rows;
    const LpModel model = BuildLp3s(inst, build);
    LpSolution sol;
    const std::string tmpl = ExternalTemplate(config.solver);
    if (tmpl.empty()) {
      SolveLimits limits;
      limits.time_budget_seconds = config.lp_time_budget_seconds;
      sol = Solve(model, limits,
                  PointFromSchedule(model, inst, greedy.schedule));
    } else {
      sol = SolveExternal(model, tmpl);
    }
    row.lp_iterations = sol.iterations;
    if (sol.status != SolveStatus::kOptimal) {
      throw NumericalError("LP solve ended with status " +
                           std::string(SolveStatusName(sol.status)));
    }
    const FractionalSchedule frac = ExtractFractional(model, sol.values);
    row.lp_opt = frac.objective;

    const BestOfKResult best =
        BestOfK(inst, frac, config.trials, StreamSeed(row.seed, kRoundingStream));
    row.rounding = best.best.z_paper;
    row.rounding_extended = best.best.z_extended;
    row.z_rand = best.summary.z_rand;
    row.trial_mean = best.summary.mean;
    row.fraction_within_z_rand = best.summary.fraction_within_z_rand;

    if (config.oracle && WithinExactLimits(inst, config.exact_limits)) {
      const ExactResult exact = ExactOpt(inst, config.mode, config.exact_limits,
                                         &best.best.schedule);
      if (exact.optimal) row.ip_opt = exact.opt;
    }
    ComputeGaps(row);
  } catch (const std::exception& e) {
    row.failed = true;
    row.error = e.what();
  }
  return row;
}

ExperimentReport RunExperiment(const ExperimentConfig& config) {
  ValidateConfig(config);
  struct Task {
    Family family;
    std::string size;
    int index;
  };
  std::vector<Task> tasks;
  for (Family family : config.families) {
    for (const std::string& size : config.sizes) {
      for (int k = 1; k <= config.instances_per_cell; ++k) {
        tasks.push_back({family, size, k});
      }
    }
  }
  ExperimentReport report;
  report.rows.resize(tasks.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t t = next++; t < tasks.size(); t = next++) {
      report.rows[t] =
          RunInstance(config, tasks[t].family, tasks[t].size, tasks[t].index);
    }
  };
  const int threads =
      std::clamp(config.threads, 1, static_cast<int>(tasks.size()));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  report.cells = Summarize(report.rows);
  return report;
}

std::vector<CellSummary> Summarize(const std::vector<InstanceRow>& rows) {
  std::vector<CellSummary> cells;
  size_t k = 0;
  while (k < rows.size()) {
    size_t end = k;
    while (end < rows.size() && rows[end].family == rows[k].family &&
           rows[end].size == rows[k].size) {
      ++end;
    }
    CellSummary cell;
    cell.family = rows[k].family;
    cell.size = rows[k].size;
    std::vector<double> lp, rounding, total;
    for (size_t i = k; i < end; ++i) {
      const InstanceRow& r = rows[i];
      ++cell.instances;
      if (r.failed) ++cell.failures;
      if (r.lp_gap) lp.push_back(*r.lp_gap);
      if (r.rounding_gap) rounding.push_back(*r.rounding_gap);
      if (r.total_gap) total.push_back(*r.total_gap);
    }
    cell.avg_lp_gap = Mean(lp);
    cell.avg_rounding_gap = Mean(rounding);
    cell.avg_total_gap = Mean(total);
    if (!total.empty()) {
      cell.max_total_gap = *std::max_element(total.begin(), total.end());
    }
    cells.push_back(std::move(cell));
    k = end;
  }
  return cells;
}

std::string FormatLp(std::optional<double> v) {
  if (!v) return "---";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", *v + 0.0);
  return buf;
}

std::string FormatGap(std::optional<double> v) {
  if (!v) return "---";
  char buf[64];
  double pct = *v * 100.0;
  // Avoid "-0.00%".
  if (std::abs(pct) < 0.005) pct = 0.0;
  std::snprintf(buf, sizeof(buf), "%.2f%%", pct);
  return buf;
}

namespace {

std::string FormatInt(std::optional<int> v) {
  return v ? std::to_string(*v) : "---";
}

}  // namespace

std::string ReportCsv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "family,size,instance,lp_opt,rounding,ip_opt,lp_gap,rounding_gap,"
         "total_gap\n";
  for (const InstanceRow& r : report.rows) {
    out << r.family << ',' << r.size << ',' << r.instance << ','
        << FormatLp(r.lp_opt) << ',' << FormatInt(r.rounding) << ','
        << FormatInt(r.ip_opt) << ',' << FormatGap(r.lp_gap) << ','
        << FormatGap(r.rounding_gap) << ',' << FormatGap(r.total_gap) << '\n';
  }
  return out.str();
}

std::string SummaryCsv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "family,size,instances,failures,avg_lp_gap,avg_rounding_gap,"
         "avg_total_gap,max_total_gap\n";
  for (const CellSummary& c : report.cells) {
    out << c.family << ',' << c.size << ',' << c.instances << ','
        << c.failures << ',' << FormatGap(c.avg_lp_gap) << ','
        << FormatGap(c.avg_rounding_gap) << ',' << FormatGap(c.avg_total_gap)
        << ',' << FormatGap(c.max_total_gap) << '\n';
  }
  return out.str();
}

std::string ReportJson(const ExperimentReport& report) {
  json rows = json::array();
  for (const InstanceRow& r : report.rows) {
    rows.push_back({{"family", r.family},
                    {"size", r.size},
                    {"instance", r.instance},
                    {"M", r.num_slots},
                    {"N", r.num_schools},
                    {"gamma_max", r.gamma_max},
                    {"total_routes", r.total_routes},
                    {"seed", r.seed},
                    {"failed", r.failed},
                    {"error", r.error},
                    {"lp_opt", Optional(r.lp_opt)},
                    {"rounding", Optional(r.rounding)},
                    {"rounding_extended", Optional(r.rounding_extended)},
                    {"ip_opt", Optional(r.ip_opt)},
                    {"greedy_upper", Optional(r.greedy_upper)},
                    {"z_rand", Optional(r.z_rand)},
                    {"trial_mean", Optional(r.trial_mean)},
                    {"fraction_within_z_rand",
                     Optional(r.fraction_within_z_rand)},
                    {"lp_iterations", r.lp_iterations},
                    {"lp_gap", Optional(r.lp_gap)},
                    {"rounding_gap", Optional(r.rounding_gap)},
                    {"total_gap", Optional(r.total_gap)}});
  }
  json cells = json::array();
  for (const CellSummary& c : report.cells) {
    cells.push_back({{"family", c.family},
                     {"size", c.size},
                     {"instances", c.instances},
                     {"failures", c.failures},
                     {"avg_lp_gap", Optional(c.avg_lp_gap)},
                     {"avg_rounding_gap", Optional(c.avg_rounding_gap)},
                     {"avg_total_gap", Optional(c.avg_total_gap)},
                     {"max_total_gap", Optional(c.max_total_gap)}});
  }
  json doc = {{"rows", rows}, {"cells", cells}};
  return doc.dump(2) + "\n";
}

ExperimentReport ReportFromJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("report: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array()) {
    throw SchemaError("report: field \"rows\" missing or not an array");
  }
  ExperimentReport report;
  try {
    for (const json& j : doc["rows"]) {
      InstanceRow r;
      r.family = j.at("family").get<std::string>();
      r.size = j.at("size").get<std::string>();
      r.instance = j.at("instance").get<int>();
      r.num_slots = j.value("M", 0);
      r.num_schools = j.value("N", 0);
      r.gamma_max = j.value("gamma_max", 0);
      r.total_routes = j.value("total_routes", 0);
      r.seed = j.value("seed", uint64_t{0});
      r.failed = j.value("failed", false);
      r.error = j.value("error", std::string());
      r.lp_opt = ReadOptional<double>(j, "lp_opt");
      r.rounding = ReadOptional<int>(j, "rounding");
      r.rounding_extended = ReadOptional<int>(j, "rounding_extended");
      r.ip_opt = ReadOptional<int>(j, "ip_opt");
      r.greedy_upper = ReadOptional<int>(j, "greedy_upper");
      r.z_rand = ReadOptional<double>(j, "z_rand");
      r.trial_mean = ReadOptional<double>(j, "trial_mean");
      r.fraction_within_z_rand =
          ReadOptional<double>(j, "fraction_within_z_rand");
      r.lp_iterations = j.value("lp_iterations", int64_t{0});
      ComputeGaps(r);
      report.rows.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("report row: ") + e.what());
  }
  report.cells = Summarize(report.rows);
  return report;
}

}  // namespace sbsp
