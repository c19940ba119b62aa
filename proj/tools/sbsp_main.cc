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

// sbsp: command-line front end.
//
// Exit codes: 0 success, 1 configuration or input error, 2 partial failure
// (a solve that did not reach optimality, failed experiment rows).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sbsp/errors.h"
#include "sbsp/exact.h"
#include "sbsp/experiment.h"
#include "sbsp/external_solver.h"
#include "sbsp/greedy.h"
#include "sbsp/instance.h"
#include "sbsp/lp_model.h"
#include "sbsp/mps.h"
#include "sbsp/rng.h"
#include "sbsp/rounding.h"
#include "sbsp/schedule.h"
#include "sbsp/simplex.h"

namespace {

using nlohmann::json;
using namespace sbsp;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

std::string ReadInput(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot read " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  out << text;
  if (!out) throw ParameterError("cannot write " + path);
}

json ScheduleJson(const StartSchedule& s) { return json::parse(ScheduleToJson(s)); }

struct Common {
  std::string mode = "paper";
  std::string solver = "bundled";
  std::string window_rows = "aggregated";
  double time_budget = 0.0;
};

WindowRows ParseWindowRows(const std::string& name) {
  if (name == "pairwise") return WindowRows::kPairwise;
  if (name == "aggregated") return WindowRows::kAggregated;
  throw ParameterError("window rows must be pairwise or aggregated");
}

struct LpRun {
  LpModel model;
  LpSolution solution;
};

LpRun SolveRelaxation(const Instance& inst, const Common& common, bool ssp) {
  const HorizonMode mode = ParseHorizonMode(common.mode);
  LpRun run;
  if (ssp) {
    run.model = BuildSspLp(inst, mode);
  } else {
    LpBuildOptions build;
    build.mode = mode;
    build.window_rows = ParseWindowRows(common.window_rows);
    run.model = BuildLp3s(inst, build);
  }
  for (const std::string& w : run.model.warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  const std::string tmpl = ExternalTemplate(common.solver);
  if (!tmpl.empty()) {
    run.solution = SolveExternal(run.model, tmpl);
  } else if (common.solver == "bundled") {
    SolveLimits limits;
    limits.time_budget_seconds = common.time_budget;
    const SearchResult greedy = GreedySearch(inst);
    run.solution = Solve(run.model, limits,
                         PointFromSchedule(run.model, inst, greedy.schedule));
  } else {
    throw ParameterError("solver must be \"bundled\" or \"cmd:<template>\"");
  }
  return run;
}

json FractionalJson(const FractionalSchedule& frac) {
  return {{"objective", frac.objective}, {"x", frac.x}, {"s", frac.s}};
}

void AddCommon(CLI::App* cmd, Common& common, bool solver) {
  cmd->add_option("--mode", common.mode, "Load horizon: paper or extended")
      ->check(CLI::IsMember({"paper", "extended"}))
      ->capture_default_str();
  if (solver) {
    cmd->add_option("--solver", common.solver,
                    "bundled, or cmd:<template> with {mps} and {sol}")
        ->capture_default_str();
    cmd->add_option("--window-rows", common.window_rows,
                    "Window rows of the LP: pairwise or aggregated")
        ->check(CLI::IsMember({"pairwise", "aggregated"}))
        ->capture_default_str();
    cmd->add_option("--time-budget", common.time_budget,
                    "LP time budget in seconds (0: none)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"School bus scheduling: LP relaxation, rounding, greedy and "
               "exact search"};
  app.require_subcommand(1);
  Common common;
  std::string out_path;
  std::string instance_path;
  uint64_t seed = 1;
  int trials = 1000;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  std::string family = "base";
  std::string size = "1p";
  gen->add_option("--family", family, "base, short-window, short-route, "
                                      "mixed-school or short-route-length")
      ->capture_default_str();
  gen->add_option("--size", size, "1-4, 1p-4p, or MxNxG")->capture_default_str();
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("--out", out_path, "Output file (default stdout)");

  // solve-lp
  auto* solve_lp = app.add_subcommand("solve-lp", "Solve the LP relaxation");
  bool ssp = false;
  solve_lp->add_option("instance", instance_path, "Instance JSON ('-' for stdin)")
      ->required();
  solve_lp->add_flag("--ssp", ssp, "Solve the SSP relaxation instead");
  AddCommon(solve_lp, common, true);
  solve_lp->add_option("--out", out_path);

  // greedy
  auto* greedy = app.add_subcommand("greedy", "Run the bisection greedy");
  greedy->add_option("instance", instance_path)->required();
  greedy->add_option("--out", out_path);

  // round
  auto* round = app.add_subcommand("round", "Solve the LP and round best-of-K");
  round->add_option("instance", instance_path)->required();
  round->add_option("--trials", trials)->check(CLI::PositiveNumber)->capture_default_str();
  round->add_option("--seed", seed)->capture_default_str();
  round->add_flag("--ssp", ssp, "Round the SSP relaxation (co-started schools)");
  int round_threads = 1;
  round->add_option("--threads", round_threads)->check(CLI::PositiveNumber);
  AddCommon(round, common, true);
  round->add_option("--out", out_path);

  // exact
  auto* exact = app.add_subcommand("exact", "Exhaustive search (tiny instances)");
  exact->add_option("instance", instance_path)->required();
  ExactLimits exact_limits;
  exact->add_option("--node-budget", exact_limits.node_budget)->capture_default_str();
  exact->add_flag("--force", exact_limits.override_size_guard,
                  "Ignore the instance size guard");
  AddCommon(exact, common, false);
  exact->add_option("--out", out_path);

  // export-mps
  auto* export_mps = app.add_subcommand("export-mps", "Write the LP as MPS");
  export_mps->add_option("instance", instance_path)->required();
  export_mps->add_flag("--ssp", ssp, "Export the SSP relaxation");
  AddCommon(export_mps, common, true);
  export_mps->add_option("--out", out_path);

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a gap experiment");
  std::vector<std::string> families;
  std::vector<std::string> sizes;
  ExperimentConfig config;
  std::string json_path, summary_path;
  bool no_oracle = false;
  experiment->add_option("--family", families,
                         "Families (default: the four standard ones)");
  experiment->add_option("--size", sizes, "Size labels (default: 2p)");
  experiment->add_option("--instances", config.instances_per_cell,
                         "Instances per cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  experiment->add_option("--seed", seed)->capture_default_str();
  experiment->add_option("--trials", trials)->check(CLI::PositiveNumber)->capture_default_str();
  experiment->add_option("--threads", config.threads)->check(CLI::PositiveNumber);
  experiment->add_flag("--no-oracle", no_oracle, "Skip the exact search");
  AddCommon(experiment, common, true);
  experiment->add_option("--out", out_path, "Per-instance CSV (default stdout)");
  experiment->add_option("--json", json_path, "Full report as JSON");
  experiment->add_option("--summary", summary_path, "Per-cell summary CSV");

  // report
  auto* report = app.add_subcommand("report", "Re-emit a JSON report");
  std::string report_in;
  std::string format = "csv";
  report->add_option("report", report_in, "Report JSON")->required();
  report->add_option("--format", format, "csv, summary or json")
      ->check(CLI::IsMember({"csv", "summary", "json"}))
      ->capture_default_str();
  report->add_option("--out", out_path);

  // solve-mps: bundled solver behind the external bridge interface.
  auto* solve_mps = app.add_subcommand("solve-mps", "");
  std::string mps_in, sol_out;
  solve_mps->add_option("mps", mps_in)->required();
  solve_mps->add_option("sol", sol_out)->required();
  solve_mps->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*gen) {
      const Instance inst =
          GenerateInstance({ParseSizeLabel(size), ParseFamily(family), seed});
      WriteOutput(out_path, SaveInstance(inst) + "\n");
      return kExitOk;
    }
    if (*solve_lp) {
      const Instance inst = LoadInstance(ReadInput(instance_path));
      const LpRun run = SolveRelaxation(inst, common, ssp);
      json doc = {{"status", SolveStatusName(run.solution.status)},
                  {"objective", run.solution.objective},
                  {"iterations", run.solution.iterations},
                  {"rows", run.model.num_rows()},
                  {"columns", run.model.num_vars()}};
      int rc = kExitOk;
      if (run.solution.status == SolveStatus::kOptimal) {
        doc["fractional"] =
            FractionalJson(ExtractFractional(run.model, run.solution.values));
      } else {
        rc = kExitPartial;
      }
      WriteOutput(out_path, doc.dump(2) + "\n");
      return rc;
    }
    if (*greedy) {
      const Instance inst = LoadInstance(ReadInput(instance_path));
      const SearchResult r = GreedySearch(inst);
      json steps = json::array();
      for (const SearchStep& s : r.transcript) {
        steps.push_back({{"lower", s.lower},
                         {"upper", s.upper},
                         {"guess", s.guess},
                         {"feasible", s.status == GreedyStatus::kFeasible}});
      }
      json doc = {{"U", r.upper},
                  {"L", r.lower},
                  {"gamma_max", r.gamma_max},
                  {"upper_bound", r.upper_bound},
                  {"lower_bound", r.lower_bound},
                  {"max_load", MaxLoad(inst, r.schedule, HorizonMode::kPaper)},
                  {"schedule", ScheduleJson(r.schedule)},
                  {"transcript", steps}};
      WriteOutput(out_path, doc.dump(2) + "\n");
      return kExitOk;
    }
    if (*round) {
      const Instance inst = LoadInstance(ReadInput(instance_path));
      const LpRun run = SolveRelaxation(inst, common, ssp);
      if (run.solution.status != SolveStatus::kOptimal) {
        std::cerr << "LP solve ended with status "
                  << SolveStatusName(run.solution.status) << "\n";
        return kExitPartial;
      }
      const FractionalSchedule frac =
          ExtractFractional(run.model, run.solution.values);
      const BestOfKResult best =
          BestOfK(inst, frac, trials, seed,
                  ssp ? RoundingScheme::kSsp : RoundingScheme::kSbsp,
                  round_threads);
      const BoundReport bound = ErrorBound(
          frac.objective, DerivedStats(inst).gamma_max, inst.num_slots);
      json repeats = json::object();
      for (const auto& [eps, k] : bound.repeats) {
        char key[32];
        std::snprintf(key, sizeof(key), "%g", eps);
        repeats[key] = k;
      }
      json doc = {
          {"lp_opt", frac.objective},
          {"z_paper", best.best.z_paper},
          {"z_extended", best.best.z_extended},
          {"z_rand", bound.z_rand},
          {"trial_index", best.best.trial_index},
          {"gammas", best.best.gammas},
          {"schedule", ScheduleJson(best.best.schedule)},
          {"trials",
           {{"count", best.summary.trials},
            {"min", best.summary.min},
            {"mean", best.summary.mean},
            {"max", best.summary.max},
            {"fraction_within_z_rand", best.summary.fraction_within_z_rand},
            {"drift_warnings", best.summary.drift_warnings}}},
          {"repeats_for", repeats}};
      WriteOutput(out_path, doc.dump(2) + "\n");
      return kExitOk;
    }
    if (*exact) {
      const Instance inst = LoadInstance(ReadInput(instance_path));
      const ExactResult r =
          ExactOpt(inst, ParseHorizonMode(common.mode), exact_limits);
      json doc = {{"opt", r.opt},
                  {"optimal", r.optimal},
                  {"nodes_explored", r.nodes_explored},
                  {"mode", HorizonModeName(r.mode)},
                  {"schedule", ScheduleJson(r.schedule)}};
      WriteOutput(out_path, doc.dump(2) + "\n");
      return r.optimal ? kExitOk : kExitPartial;
    }
    if (*export_mps) {
      const Instance inst = LoadInstance(ReadInput(instance_path));
      const HorizonMode mode = ParseHorizonMode(common.mode);
      LpModel model;
      if (ssp) {
        model = BuildSspLp(inst, mode);
      } else {
        LpBuildOptions build;
        build.mode = mode;
        build.window_rows = ParseWindowRows(common.window_rows);
        model = BuildLp3s(inst, build);
      }
      const MpsExport mps = ExportMps(model);
      for (const std::string& w : mps.warnings) {
        std::cerr << "warning: " << w << "\n";
      }
      WriteOutput(out_path, mps.text);
      return kExitOk;
    }
    if (*experiment) {
      for (const std::string& f : families) {
        config.families.push_back(ParseFamily(f));
      }
      if (config.families.empty()) config.families = DefaultFamilies();
      config.sizes = sizes.empty() ? std::vector<std::string>{"2p"} : sizes;
      config.seed = seed;
      config.trials = trials;
      config.mode = ParseHorizonMode(common.mode);
      config.window_rows = ParseWindowRows(common.window_rows);
      config.solver = common.solver;
      config.oracle = !no_oracle;
      config.lp_time_budget_seconds = common.time_budget;
      const ExperimentReport rep = RunExperiment(config);
      WriteOutput(out_path, ReportCsv(rep));
      if (!json_path.empty()) WriteOutput(json_path, ReportJson(rep));
      if (!summary_path.empty()) WriteOutput(summary_path, SummaryCsv(rep));
      for (const InstanceRow& r : rep.rows) {
        if (r.failed) {
          std::cerr << "failed: " << r.family << " size " << r.size
                    << " instance " << r.instance << ": " << r.error << "\n";
        }
      }
      return rep.failures() > 0 ? kExitPartial : kExitOk;
    }
    if (*report) {
      const ExperimentReport rep = ReportFromJson(ReadInput(report_in));
      if (format == "csv") WriteOutput(out_path, ReportCsv(rep));
      else if (format == "summary") WriteOutput(out_path, SummaryCsv(rep));
      else WriteOutput(out_path, ReportJson(rep));
      return kExitOk;
    }
    if (*solve_mps) {
      const LpModel model = ImportMps(ReadInput(mps_in));
      const LpSolution sol = Solve(model);
      if (sol.status != SolveStatus::kOptimal) return kExitPartial;
      std::ostringstream text;
      char buf[64];
      for (int j = 0; j < model.num_vars(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", sol.values[j]);
        text << model.var_name(j) << ' ' << buf << '\n';
      }
      WriteOutput(sol_out, text.str());
      return kExitOk;
    }
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SizeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPartial;
  }
  return kExitConfig;
}
