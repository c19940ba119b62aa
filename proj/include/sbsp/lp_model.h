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

// Time-indexed LP models for the school bus scheduling problem.
//
// Variables (1-based slots m, 0-based schools n and routes i):
//   x_{i,n}^(m)  route i of school n starts in slot m          (x-space)
//   S_{i,n}^(m)  = sum_{t<=m} x_{i,n}^(t), a start-time CDF      (S-space)
//   y_n^(m)      common start indicator of school n (SSP model)
//   z            fleet size, minimized
//   W_n^(m~)     window pivot (aggregated window rows only)
//
// S-space model (the production model):
//   S_i^(m~) <= S_j^(min(m~ + l_n, M))   all ordered i != j     window
//   S_i^(m-1) <= S_i^(m)                                         monotone
//   S_i^(M) = 1                                                  terminal
//   S >= 0 (bounds; the implied S <= 1 is also set as a bound)
//   sum_{n,i} S_i^(m) - S_i^(max(m - r(i,n), 0)) <= z  per slot  load
// Window rows whose right side is S^(M) (i.e. m~ + l_n >= M) always hold
// and are not generated. The aggregated variant replaces the Gamma(Gamma-1)
// window rows of a school and slot m~ by
//   S_i^(m~) <= W_n^(m~) <= S_j^(min(m~ + l_n, M))   all i, all j
// (2 Gamma rows), which has the same projection onto S since the i = j
// rows follow from monotonicity. It is used for schools with Gamma >= 4.

#ifndef SBSP_LP_MODEL_H_
#define SBSP_LP_MODEL_H_

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sbsp/instance.h"
#include "sbsp/schedule.h"

namespace sbsp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Feasibility tolerance for reading solutions back out of a model.
inline constexpr double kFeasibilityTol = 1e-7;
// Negative marginals above -kClampTol are clamped to zero on extraction.
inline constexpr double kClampTol = 1e-9;

enum class VarFamily { kX, kS, kY, kZ, kW };

struct VarKey {
  VarFamily family = VarFamily::kZ;
  int school = -1;
  int route = -1;
  int slot = -1;
  auto operator<=>(const VarKey&) const = default;
};

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

enum class RowFamily {
  kWindowS,    // S-space window rows
  kMonotone,   // S^(m-1) <= S^(m)
  kTerminal,   // S^(M) = 1
  kLoadS,      // S-space load rows
  kAssignX,    // sum_m x^(m) = 1
  kLoadX,      // x-space load rows
  kWindowX,    // x-space window rows (prefix-sum form)
  kAssignY,    // sum_m y_n^(m) = 1
  kLoadY,      // SSP load rows
  kOther,
};

struct LpRow {
  std::string name;
  RowFamily family = RowFamily::kOther;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
  std::vector<int> cols;
  std::vector<double> coefs;
};

// Dimensions of the instance a model was built from.
struct ModelShape {
  int num_slots = 0;
  std::vector<int> routes_per_school;
};

class LpModel {
 public:
  // Returns the new column index. Keys must be unique.
  int AddVariable(std::string name, double lower, double upper, double cost,
                  std::optional<VarKey> key = std::nullopt);
  // Duplicate columns are merged and zero coefficients dropped.
  int AddRow(LpRow row);

  void set_cost(int col, double cost) { costs_[col] = cost; }
  void set_bounds(int col, double lower, double upper) {
    lower_[col] = lower;
    upper_[col] = upper;
  }

  int num_vars() const { return static_cast<int>(costs_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const std::vector<LpRow>& rows() const { return rows_; }
  const LpRow& row(int r) const { return rows_[r]; }
  const std::string& var_name(int col) const { return names_[col]; }
  double lower(int col) const { return lower_[col]; }
  double upper(int col) const { return upper_[col]; }
  double cost(int col) const { return costs_[col]; }
  const std::vector<double>& costs() const { return costs_; }

  std::optional<int> FindColumn(const VarKey& key) const;
  int Column(const VarKey& key) const;  // throws if absent
  std::optional<VarKey> KeyOf(int col) const { return keys_[col]; }
  bool HasFamily(VarFamily family) const;

  int64_t CountRows(RowFamily family) const;
  int64_t NumNonzeros() const;

  double RowActivity(int r, std::span<const double> values) const;
  double Objective(std::span<const double> values) const;
  // Description of the first bound or row violated by more than `tol`.
  std::optional<std::string> FindViolation(std::span<const double> values,
                                           double tol) const;

  ModelShape shape;
  std::vector<std::string> warnings;

 private:
  std::vector<std::string> names_;
  std::vector<double> lower_, upper_, costs_;
  std::vector<std::optional<VarKey>> keys_;
  std::map<VarKey, int> key_index_;
  std::vector<LpRow> rows_;
};

enum class WindowRows { kPairwise, kAggregated };

struct LpBuildOptions {
  HorizonMode mode = HorizonMode::kPaper;
  WindowRows window_rows = WindowRows::kPairwise;
  int64_t warn_rows = 5'000'000;
  int64_t max_rows = 100'000'000;
};

// Closed-form row tallies of the S-space model.
struct RowTally {
  int64_t window = 0;
  int64_t monotone = 0;
  int64_t terminal = 0;
  int64_t load = 0;
  int64_t total() const { return window + monotone + terminal + load; }
};
RowTally Lp3sRowTally(const Instance& inst, HorizonMode mode,
                      WindowRows window_rows = WindowRows::kPairwise);

// Number of load rows: M (paper) or M + K_max - 1 (extended).
int LoadHorizon(const Instance& inst, HorizonMode mode);

// S-space model. Throws SizeError when the tally exceeds options.max_rows.
LpModel BuildLp3s(const Instance& inst, const LpBuildOptions& options = {});

// x-space model with assignment rows, load rows and prefix-sum window rows
// for every m~ in [M]. Intended for cross-checks at tiny sizes.
LpModel BuildLp3x(const Instance& inst, HorizonMode mode = HorizonMode::kPaper);

// SSP relaxation: one y_n^(m) per school and slot, windows ignored.
LpModel BuildSspLp(const Instance& inst,
                   HorizonMode mode = HorizonMode::kPaper);

// Single-school polytope in S-space (window, monotone, terminal rows and
// bounds only; zero objective). School index 0.
LpModel BuildSchoolPolytope(const School& school, int num_slots);

// Single-school x-space system: assignment rows, window rows for all
// ordered pairs and all m~, 0 <= x <= 1.
LpModel BuildSchoolPolytopeX(const School& school, int num_slots);

// x^(m) = S^(m) - S^(m-1), S^(0) = 0. Throws NumericalError if S decreases
// by more than kClampTol; smaller dips are clamped to zero.
std::vector<double> XFromS(std::span<const double> s);
// Prefix sums. Throws NumericalError on entries below -kClampTol.
std::vector<double> SFromX(std::span<const double> x);

struct FractionalSchedule {
  // x[n][i][m-1], s[n][i][m-1]
  std::vector<std::vector<std::vector<double>>> x;
  std::vector<std::vector<std::vector<double>>> s;
  double objective = 0.0;  // z*
};

// Reads S (or x, or y) values out of a solution of a model built above.
// Throws ExtractionError naming the first violated row or bound.
FractionalSchedule ExtractFractional(const LpModel& model,
                                     std::span<const double> values);

// Integral fractional schedule (point masses) for a start schedule.
FractionalSchedule FractionalFromSchedule(const Instance& inst,
                                          const StartSchedule& sched);

// Column values of `model` that encode an integral schedule (S, x or y
// columns set from the starts, W to the largest S it bounds, z to the
// maximum load). Used as a simplex
// starting point.
std::vector<double> PointFromSchedule(const LpModel& model,
                                      const Instance& inst,
                                      const StartSchedule& sched);

}  // namespace sbsp

#endif  // SBSP_LP_MODEL_H_
