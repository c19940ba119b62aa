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

// Experiment harness: generate instances per (family, size) cell, solve the
// S-space relaxation, round best-of-K, run the greedy and (for tiny
// instances) the exact search, and report the gaps
//   lp_gap       = (ip_opt - lp_opt) / lp_opt
//   rounding_gap = (rounding - ip_opt) / ip_opt
//   total_gap    = (rounding - lp_opt) / lp_opt

#ifndef SBSP_EXPERIMENT_H_
#define SBSP_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sbsp/exact.h"
#include "sbsp/instance.h"
#include "sbsp/lp_model.h"
#include "sbsp/schedule.h"

namespace sbsp {

struct ExperimentConfig {
  std::vector<Family> families;
  std::vector<std::string> sizes;  // labels accepted by ParseSizeLabel
  int instances_per_cell = 5;
  uint64_t seed = 1;
  int trials = 1000;
  HorizonMode mode = HorizonMode::kPaper;
  WindowRows window_rows = WindowRows::kAggregated;
  std::string solver = "bundled";  // or "cmd:<template>"
  bool oracle = true;              // exact search on instances within limits
  ExactLimits exact_limits;
  double lp_time_budget_seconds = 0.0;
  int threads = 1;
};

// Throws ParameterError for an empty or malformed configuration.
void ValidateConfig(const ExperimentConfig& config);

// Seed of instance `index` (1-based) of a cell.
uint64_t InstanceSeed(uint64_t seed, Family family, const SizeParams& size,
                      int index);

struct InstanceRow {
  std::string family;
  std::string size;
  int instance = 0;  // 1-based
  int num_slots = 0;
  int num_schools = 0;
  int gamma_max = 0;
  int total_routes = 0;
  uint64_t seed = 0;
  bool failed = false;
  std::string error;
  std::optional<double> lp_opt;
  std::optional<int> rounding;
  std::optional<int> rounding_extended;
  std::optional<int> ip_opt;
  std::optional<int> greedy_upper;  // U + Gamma_max style bound input U
  std::optional<double> z_rand;
  std::optional<double> trial_mean;
  std::optional<double> fraction_within_z_rand;
  int64_t lp_iterations = 0;
  std::optional<double> lp_gap;
  std::optional<double> rounding_gap;
  std::optional<double> total_gap;
};

struct CellSummary {
  std::string family;
  std::string size;
  int instances = 0;
  int failures = 0;
  std::optional<double> avg_lp_gap;
  std::optional<double> avg_rounding_gap;
  std::optional<double> avg_total_gap;
  std::optional<double> max_total_gap;
};

struct ExperimentReport {
  std::vector<InstanceRow> rows;  // sorted by (family, size, instance)
  std::vector<CellSummary> cells;
  int failures() const;
};

// Fills the three gaps from lp_opt, rounding and ip_opt.
void ComputeGaps(InstanceRow& row);

// Runs one instance of a cell.
InstanceRow RunInstance(const ExperimentConfig& config, Family family,
                        const std::string& size_label, int index);

ExperimentReport RunExperiment(const ExperimentConfig& config);

// Recomputes per-cell summaries from the rows.
std::vector<CellSummary> Summarize(const std::vector<InstanceRow>& rows);

// family,size,instance,lp_opt,rounding,ip_opt,lp_gap,rounding_gap,total_gap
std::string ReportCsv(const ExperimentReport& report);
// family,size,instances,failures,avg_lp_gap,avg_rounding_gap,avg_total_gap,
// max_total_gap
std::string SummaryCsv(const ExperimentReport& report);
std::string ReportJson(const ExperimentReport& report);
ExperimentReport ReportFromJson(std::string_view text);

// "35.6"; "3.93%"; "---" when absent.
std::string FormatLp(std::optional<double> v);
std::string FormatGap(std::optional<double> v);

}  // namespace sbsp

#endif  // SBSP_EXPERIMENT_H_
