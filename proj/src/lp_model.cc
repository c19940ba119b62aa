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

#include "sbsp/lp_model.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include "sbsp/errors.h"

namespace sbsp {

int LpModel::AddVariable(std::string name, double lower, double upper,
                         double cost, std::optional<VarKey> key) {
  const int col = num_vars();
  if (key) {
    auto [it, inserted] = key_index_.emplace(*key, col);
    if (!inserted) throw Error("duplicate variable key for " + name);
  }
  names_.push_back(std::move(name));
  lower_.push_back(lower);
  upper_.push_back(upper);
  costs_.push_back(cost);
  keys_.push_back(key);
  return col;
}

int LpModel::AddRow(LpRow row) {
  std::vector<std::pair<int, double>> entries;
  entries.reserve(row.cols.size());
  for (size_t k = 0; k < row.cols.size(); ++k) {
    entries.emplace_back(row.cols[k], row.coefs[k]);
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  row.cols.clear();
  row.coefs.clear();
  for (size_t k = 0; k < entries.size();) {
    const int col = entries[k].first;
    double sum = 0.0;
    for (; k < entries.size() && entries[k].first == col; ++k) {
      sum += entries[k].second;
    }
    if (sum != 0.0) {
      row.cols.push_back(col);
      row.coefs.push_back(sum);
    }
  }
  rows_.push_back(std::move(row));
  return num_rows() - 1;
}

std::optional<int> LpModel::FindColumn(const VarKey& key) const {
  auto it = key_index_.find(key);
  if (it == key_index_.end()) return std::nullopt;
  return it->second;
}

int LpModel::Column(const VarKey& key) const {
  auto col = FindColumn(key);
  if (!col) throw Error("variable key not present in model");
  return *col;
}

bool LpModel::HasFamily(VarFamily family) const {
  auto it = key_index_.lower_bound(VarKey{family, -1, -1, -1});
  return it != key_index_.end() && it->first.family == family;
}

int64_t LpModel::CountRows(RowFamily family) const {
  return std::count_if(rows_.begin(), rows_.end(),
                       [family](const LpRow& r) { return r.family == family; });
}

int64_t LpModel::NumNonzeros() const {
  int64_t nnz = 0;
  for (const LpRow& r : rows_) nnz += static_cast<int64_t>(r.cols.size());
  return nnz;
}

double LpModel::RowActivity(int r, std::span<const double> values) const {
  const LpRow& row = rows_[r];
  double sum = 0.0;
  for (size_t k = 0; k < row.cols.size(); ++k) {
    sum += row.coefs[k] * values[row.cols[k]];
  }
  return sum;
}

double LpModel::Objective(std::span<const double> values) const {
  double sum = 0.0;
  for (int j = 0; j < num_vars(); ++j) sum += costs_[j] * values[j];
  return sum;
}

std::optional<std::string> LpModel::FindViolation(
    std::span<const double> values, double tol) const {
  if (static_cast<int>(values.size()) != num_vars()) {
    return "solution has " + std::to_string(values.size()) +
           " values, model has " + std::to_string(num_vars()) + " columns";
  }
  for (int j = 0; j < num_vars(); ++j) {
    if (!std::isfinite(values[j]) || values[j] < lower_[j] - tol ||
        values[j] > upper_[j] + tol) {
      std::ostringstream msg;
      msg << "bound of column " << names_[j] << " violated (value "
          << values[j] << ")";
      return msg.str();
    }
  }
  for (int r = 0; r < num_rows(); ++r) {
    const double activity = RowActivity(r, values);
    const LpRow& row = rows_[r];
    const bool bad =
        (row.sense != RowSense::kGreaterEqual && activity > row.rhs + tol) ||
        (row.sense != RowSense::kLessEqual && activity < row.rhs - tol);
    if (bad) {
      std::ostringstream msg;
      msg << "row " << row.name << " violated (activity " << activity
          << ", rhs " << row.rhs << ")";
      return msg.str();
    }
  }
  return std::nullopt;
}

namespace {

std::string Name(char prefix, std::initializer_list<int> parts) {
  std::string out(1, prefix);
  for (int p : parts) out += "_" + std::to_string(p);
  return out;
}

std::string RowName(const char* tag, std::initializer_list<int> parts) {
  std::string out(tag);
  for (int p : parts) out += "_" + std::to_string(p);
  return out;
}

ModelShape ShapeOf(const Instance& inst) {
  ModelShape shape;
  shape.num_slots = inst.num_slots;
  for (const School& s : inst.schools) {
    shape.routes_per_school.push_back(s.num_routes());
  }
  return shape;
}

// Number of m~ in [M] with m~ + l < M.
int64_t NonVacuousWindowSlots(int num_slots, int window) {
  return std::max<int64_t>(0, static_cast<int64_t>(num_slots) - 1 - window);
}

// Adds S_{i,n}^(m) columns for every school in `schools` (indexed from
// `first_school`) and returns their column indices [n][i][m-1].
std::vector<std::vector<std::vector<int>>> AddSColumns(
    LpModel& model, const std::vector<School>& schools, int num_slots) {
  std::vector<std::vector<std::vector<int>>> cols(schools.size());
  for (size_t n = 0; n < schools.size(); ++n) {
    cols[n].resize(schools[n].num_routes());
    for (int i = 0; i < schools[n].num_routes(); ++i) {
      for (int m = 1; m <= num_slots; ++m) {
        cols[n][i].push_back(model.AddVariable(
            Name('S', {static_cast<int>(n) + 1, i + 1, m}), 0.0, 1.0, 0.0,
            VarKey{VarFamily::kS, static_cast<int>(n), i, m}));
      }
    }
  }
  return cols;
}

bool Aggregates(const School& school, WindowRows window_rows) {
  return window_rows == WindowRows::kAggregated && school.num_routes() >= 4;
}

void AddSchoolSRows(LpModel& model, const School& school, int n,
                    const std::vector<std::vector<int>>& s, int num_slots,
                    WindowRows window_rows = WindowRows::kPairwise) {
  const int gamma = school.num_routes();
  // Window rows.
  if (Aggregates(school, window_rows)) {
    for (int mt = 1; mt + school.window < num_slots; ++mt) {
      const int w = model.AddVariable(Name('W', {n + 1, mt}), 0.0, 1.0, 0.0,
                                      VarKey{VarFamily::kW, n, -1, mt});
      for (int i = 0; i < gamma; ++i) {
        model.AddRow({RowName("RWa", {n + 1, i + 1, mt}), RowFamily::kWindowS,
                      RowSense::kLessEqual, 0.0, {s[i][mt - 1], w},
                      {1.0, -1.0}});
      }
      for (int j = 0; j < gamma; ++j) {
        model.AddRow({RowName("RWb", {n + 1, j + 1, mt}), RowFamily::kWindowS,
                      RowSense::kLessEqual, 0.0,
                      {w, s[j][mt + school.window - 1]}, {1.0, -1.0}});
      }
    }
  }
  for (int i = 0; i < gamma && !Aggregates(school, window_rows); ++i) {
    for (int j = 0; j < gamma; ++j) {
      if (i == j) continue;
      for (int mt = 1; mt + school.window < num_slots; ++mt) {
        LpRow row{RowName("WIN", {n + 1, i + 1, j + 1, mt}),
                  RowFamily::kWindowS, RowSense::kLessEqual, 0.0,
                  {s[i][mt - 1], s[j][mt + school.window - 1]},
                  {1.0, -1.0}};
        model.AddRow(std::move(row));
      }
    }
  }
  // Monotone rows.
  for (int i = 0; i < gamma; ++i) {
    for (int m = 2; m <= num_slots; ++m) {
      model.AddRow({RowName("MON", {n + 1, i + 1, m}), RowFamily::kMonotone,
                    RowSense::kLessEqual, 0.0, {s[i][m - 2], s[i][m - 1]},
                    {1.0, -1.0}});
    }
  }
  // Terminal rows.
  for (int i = 0; i < gamma; ++i) {
    model.AddRow({RowName("TRM", {n + 1, i + 1}), RowFamily::kTerminal,
                  RowSense::kEqual, 1.0, {s[i][num_slots - 1]}, {1.0}});
  }
}

}  // namespace

int LoadHorizon(const Instance& inst, HorizonMode mode) {
  return mode == HorizonMode::kPaper
             ? inst.num_slots
             : inst.num_slots + DerivedStats(inst).k_max - 1;
}

RowTally Lp3sRowTally(const Instance& inst, HorizonMode mode,
                      WindowRows window_rows) {
  RowTally tally;
  for (const School& school : inst.schools) {
    const int64_t gamma = school.num_routes();
    const int64_t per_slot =
        Aggregates(school, window_rows) ? 2 * gamma : gamma * (gamma - 1);
    tally.window +=
        per_slot * NonVacuousWindowSlots(inst.num_slots, school.window);
    tally.monotone += gamma * (inst.num_slots - 1);
    tally.terminal += gamma;
  }
  tally.load = LoadHorizon(inst, mode);
  return tally;
}

LpModel BuildLp3s(const Instance& inst, const LpBuildOptions& options) {
  ValidateInstance(inst);
  const RowTally tally =
      Lp3sRowTally(inst, options.mode, options.window_rows);
  if (tally.total() > options.max_rows) {
    throw SizeError("S-space model would have " +
                    std::to_string(tally.total()) + " rows (window " +
                    std::to_string(tally.window) + ", monotone " +
                    std::to_string(tally.monotone) + ", terminal " +
                    std::to_string(tally.terminal) + ", load " +
                    std::to_string(tally.load) + "), limit " +
                    std::to_string(options.max_rows));
  }
  const int num_slots = inst.num_slots;
  LpModel model;
  model.shape = ShapeOf(inst);
  if (tally.total() > options.warn_rows) {
    model.warnings.push_back("large model: " + std::to_string(tally.total()) +
                             " rows");
  }
  const auto s = AddSColumns(model, inst.schools, num_slots);
  const int z = model.AddVariable("z", 0.0, kInf, 1.0, VarKey{VarFamily::kZ});
  for (int n = 0; n < inst.num_schools(); ++n) {
    AddSchoolSRows(model, inst.schools[n], n, s[n], num_slots,
                   options.window_rows);
  }
  const int horizon = LoadHorizon(inst, options.mode);
  for (int m = 1; m <= horizon; ++m) {
    LpRow row{RowName("LD", {m}), RowFamily::kLoadS, RowSense::kLessEqual,
              0.0, {}, {}};
    for (int n = 0; n < inst.num_schools(); ++n) {
      const School& school = inst.schools[n];
      for (int i = 0; i < school.num_routes(); ++i) {
        const int hi = std::min(m, num_slots);
        const int lo = std::min(std::max(m - school.route_lengths[i], 0),
                                num_slots);
        if (hi == lo) continue;
        row.cols.push_back(s[n][i][hi - 1]);
        row.coefs.push_back(1.0);
        if (lo > 0) {
          row.cols.push_back(s[n][i][lo - 1]);
          row.coefs.push_back(-1.0);
        }
      }
    }
    row.cols.push_back(z);
    row.coefs.push_back(-1.0);
    model.AddRow(std::move(row));
  }
  return model;
}

LpModel BuildLp3x(const Instance& inst, HorizonMode mode) {
  ValidateInstance(inst);
  const int num_slots = inst.num_slots;
  LpModel model;
  model.shape = ShapeOf(inst);
  std::vector<std::vector<std::vector<int>>> x(inst.num_schools());
  for (int n = 0; n < inst.num_schools(); ++n) {
    x[n].resize(inst.schools[n].num_routes());
    for (int i = 0; i < inst.schools[n].num_routes(); ++i) {
      for (int m = 1; m <= num_slots; ++m) {
        x[n][i].push_back(model.AddVariable(Name('x', {n + 1, i + 1, m}), 0.0,
                                            1.0, 0.0,
                                            VarKey{VarFamily::kX, n, i, m}));
      }
    }
  }
  const int z = model.AddVariable("z", 0.0, kInf, 1.0, VarKey{VarFamily::kZ});
  for (int n = 0; n < inst.num_schools(); ++n) {
    for (int i = 0; i < inst.schools[n].num_routes(); ++i) {
      model.AddRow({RowName("AX", {n + 1, i + 1}), RowFamily::kAssignX,
                    RowSense::kEqual, 1.0, x[n][i],
                    std::vector<double>(num_slots, 1.0)});
    }
  }
  const int horizon = LoadHorizon(inst, mode);
  for (int m = 1; m <= horizon; ++m) {
    LpRow row{RowName("LX", {m}), RowFamily::kLoadX, RowSense::kLessEqual,
              0.0, {}, {}};
    for (int n = 0; n < inst.num_schools(); ++n) {
      const School& school = inst.schools[n];
      for (int i = 0; i < school.num_routes(); ++i) {
        const int first = std::max(m - school.route_lengths[i] + 1, 1);
        for (int t = first; t <= std::min(m, num_slots); ++t) {
          row.cols.push_back(x[n][i][t - 1]);
          row.coefs.push_back(1.0);
        }
      }
    }
    row.cols.push_back(z);
    row.coefs.push_back(-1.0);
    model.AddRow(std::move(row));
  }
  for (int n = 0; n < inst.num_schools(); ++n) {
    const School& school = inst.schools[n];
    for (int i = 0; i < school.num_routes(); ++i) {
      for (int j = 0; j < school.num_routes(); ++j) {
        if (i == j) continue;
        for (int mt = 1; mt <= num_slots; ++mt) {
          LpRow row{RowName("WX", {n + 1, i + 1, j + 1, mt}),
                    RowFamily::kWindowX, RowSense::kLessEqual, 0.0, {}, {}};
          for (int t = 1; t <= mt; ++t) {
            row.cols.push_back(x[n][i][t - 1]);
            row.coefs.push_back(1.0);
          }
          for (int t = 1; t <= std::min(mt + school.window, num_slots); ++t) {
            row.cols.push_back(x[n][j][t - 1]);
            row.coefs.push_back(-1.0);
          }
          model.AddRow(std::move(row));
        }
      }
    }
  }
  return model;
}

LpModel BuildSspLp(const Instance& inst, HorizonMode mode) {
  ValidateInstance(inst);
  const int num_slots = inst.num_slots;
  LpModel model;
  model.shape = ShapeOf(inst);
  std::vector<std::vector<int>> y(inst.num_schools());
  for (int n = 0; n < inst.num_schools(); ++n) {
    for (int m = 1; m <= num_slots; ++m) {
      y[n].push_back(model.AddVariable(Name('y', {n + 1, m}), 0.0, 1.0, 0.0,
                                       VarKey{VarFamily::kY, n, -1, m}));
    }
  }
  const int z = model.AddVariable("z", 0.0, kInf, 1.0, VarKey{VarFamily::kZ});
  for (int n = 0; n < inst.num_schools(); ++n) {
    model.AddRow({RowName("AY", {n + 1}), RowFamily::kAssignY,
                  RowSense::kEqual, 1.0, y[n],
                  std::vector<double>(num_slots, 1.0)});
  }
  const int horizon = LoadHorizon(inst, mode);
  for (int m = 1; m <= horizon; ++m) {
    LpRow row{RowName("LY", {m}), RowFamily::kLoadY, RowSense::kLessEqual,
              0.0, {}, {}};
    for (int n = 0; n < inst.num_schools(); ++n) {
      for (int r : inst.schools[n].route_lengths) {
        for (int t = std::max(m - r + 1, 1); t <= std::min(m, num_slots);
             ++t) {
          row.cols.push_back(y[n][t - 1]);
          row.coefs.push_back(1.0);
        }
      }
    }
    row.cols.push_back(z);
    row.coefs.push_back(-1.0);
    model.AddRow(std::move(row));
  }
  return model;
}

LpModel BuildSchoolPolytope(const School& school, int num_slots) {
  if (num_slots < 1 || school.num_routes() < 1) {
    throw ParameterError("school polytope needs M >= 1 and a route");
  }
  LpModel model;
  model.shape.num_slots = num_slots;
  model.shape.routes_per_school = {school.num_routes()};
  const auto s = AddSColumns(model, {school}, num_slots);
  AddSchoolSRows(model, school, 0, s[0], num_slots);
  return model;
}

LpModel BuildSchoolPolytopeX(const School& school, int num_slots) {
  Instance single{num_slots, {school}};
  LpModel full = BuildLp3x(single);
  // Rebuild without the load rows and z.
  LpModel model;
  model.shape = full.shape;
  for (int j = 0; j < full.num_vars(); ++j) {
    if (full.KeyOf(j)->family == VarFamily::kZ) continue;
    model.AddVariable(full.var_name(j), full.lower(j), full.upper(j), 0.0,
                      full.KeyOf(j));
  }
  for (const LpRow& row : full.rows()) {
    if (row.family == RowFamily::kLoadX) continue;
    model.AddRow(row);
  }
  return model;
}

std::vector<double> XFromS(std::span<const double> s) {
  std::vector<double> x(s.size());
  double prev = 0.0;
  for (size_t m = 0; m < s.size(); ++m) {
    double d = s[m] - prev;
    if (d < 0.0) {
      if (d < -kClampTol) {
        throw NumericalError("S decreases at slot " + std::to_string(m + 1));
      }
      d = 0.0;
    }
    x[m] = d;
    prev = s[m];
  }
  return x;
}

std::vector<double> SFromX(std::span<const double> x) {
  std::vector<double> s(x.size());
  double sum = 0.0;
  for (size_t m = 0; m < x.size(); ++m) {
    if (x[m] < -kClampTol) {
      throw NumericalError("negative x at slot " + std::to_string(m + 1));
    }
    sum += std::max(x[m], 0.0);
    s[m] = sum;
  }
  return s;
}

namespace {

// Clamps, renormalizes to unit mass and recomputes prefix sums.
void Normalize(std::vector<double>& x, std::vector<double>& s) {
  double total = 0.0;
  for (double& v : x) {
    if (v < 0.0) v = 0.0;
    total += v;
  }
  if (total <= 0.0) throw NumericalError("marginal has no mass");
  for (double& v : x) v /= total;
  s = SFromX(x);
  s.back() = 1.0;
}

}  // namespace

FractionalSchedule ExtractFractional(const LpModel& model,
                                     std::span<const double> values) {
  if (auto violation = model.FindViolation(values, kFeasibilityTol)) {
    throw ExtractionError("infeasible solution: " + *violation);
  }
  const ModelShape& shape = model.shape;
  const int num_slots = shape.num_slots;
  const int num_schools = static_cast<int>(shape.routes_per_school.size());
  FractionalSchedule frac;
  frac.x.resize(num_schools);
  frac.s.resize(num_schools);
  if (auto z = model.FindColumn(VarKey{VarFamily::kZ})) {
    frac.objective = values[*z];
  } else {
    frac.objective = model.Objective(values);
  }

  const bool s_space = model.HasFamily(VarFamily::kS);
  const bool x_space = model.HasFamily(VarFamily::kX);
  const bool y_space = model.HasFamily(VarFamily::kY);
  if (!s_space && !x_space && !y_space) {
    throw ExtractionError("model has no schedule variables");
  }
  for (int n = 0; n < num_schools; ++n) {
    const int gamma = shape.routes_per_school[n];
    frac.x[n].resize(gamma);
    frac.s[n].resize(gamma);
    for (int i = 0; i < gamma; ++i) {
      std::vector<double> raw(num_slots);
      for (int m = 1; m <= num_slots; ++m) {
        const VarKey key = s_space   ? VarKey{VarFamily::kS, n, i, m}
                           : x_space ? VarKey{VarFamily::kX, n, i, m}
                                     : VarKey{VarFamily::kY, n, -1, m};
        raw[m - 1] = values[model.Column(key)];
      }
      std::vector<double> x = s_space ? XFromS(raw) : raw;
      for (double v : x) {
        if (v < -kClampTol) {
          throw NumericalError("negative marginal for school " +
                               std::to_string(n) + " route " +
                               std::to_string(i));
        }
      }
      Normalize(x, frac.s[n][i]);
      frac.x[n][i] = std::move(x);
    }
  }
  return frac;
}

FractionalSchedule FractionalFromSchedule(const Instance& inst,
                                          const StartSchedule& sched) {
  CheckShape(inst, sched);
  FractionalSchedule frac;
  frac.x.resize(inst.num_schools());
  frac.s.resize(inst.num_schools());
  for (int n = 0; n < inst.num_schools(); ++n) {
    for (int t : sched.starts[n]) {
      std::vector<double> x(inst.num_slots, 0.0);
      x.at(t - 1) = 1.0;
      frac.s[n].push_back(SFromX(x));
      frac.x[n].push_back(std::move(x));
    }
  }
  frac.objective = MaxLoad(inst, sched, HorizonMode::kPaper);
  return frac;
}

std::vector<double> PointFromSchedule(const LpModel& model,
                                      const Instance& inst,
                                      const StartSchedule& sched) {
  CheckShape(inst, sched);
  std::vector<double> point(model.num_vars(), 0.0);
  const int load = MaxLoad(inst, sched, HorizonMode::kExtended);
  for (int j = 0; j < model.num_vars(); ++j) {
    const auto key = model.KeyOf(j);
    if (!key) continue;
    switch (key->family) {
      case VarFamily::kZ:
        point[j] = load;
        break;
      case VarFamily::kS:
        point[j] = key->slot >= sched.starts[key->school][key->route];
        break;
      case VarFamily::kX:
        point[j] = key->slot == sched.starts[key->school][key->route];
        break;
      case VarFamily::kY:
        point[j] = key->slot == sched.starts[key->school][0];
        break;
      case VarFamily::kW: {
        const auto& starts = sched.starts[key->school];
        point[j] = key->slot >= *std::min_element(starts.begin(), starts.end());
        break;
      }
    }
  }
  return point;
}

}  // namespace sbsp
