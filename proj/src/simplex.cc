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

#include "sbsp/simplex.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>

#include "sbsp/basis_factor.h"
#include "sbsp/errors.h"

namespace sbsp {
namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kPrimalTol = 1e-9;
constexpr double kRelaxedPrimalTol = 1e-7;
constexpr double kDualTol = 1e-9;
constexpr double kDropTol = 1e-12;
constexpr double kDegenerateStep = 1e-12;
constexpr int kRefactorInterval = 30;
// Devex reference weights are reset once any exceeds this.
constexpr double kDevexReset = 1e6;
constexpr int kBlandTrigger = 50;

enum class VarState : uint8_t { kBasic, kAtLower, kAtUpper, kFree };

// [A | -I] with bounds; structural columns first, then one logical per row.
struct StandardForm {
  int n = 0;  // structural columns
  int m = 0;  // rows
  std::vector<int> start, index;
  std::vector<double> value;
  std::vector<double> lower, upper, cost;  // size n + m
  // Row-wise copy of the structural part.
  std::vector<int> row_start, row_col;
  std::vector<double> row_value;

  explicit StandardForm(const LpModel& model)
      : n(model.num_vars()), m(model.num_rows()) {
    std::vector<int> count(n, 0);
    for (const LpRow& row : model.rows()) {
      for (int c : row.cols) ++count[c];
    }
    start.assign(n + 1, 0);
    for (int j = 0; j < n; ++j) start[j + 1] = start[j] + count[j];
    index.resize(start[n]);
    value.resize(start[n]);
    std::vector<int> fill(start.begin(), start.end() - 1);
    for (int r = 0; r < m; ++r) {
      const LpRow& row = model.row(r);
      for (size_t k = 0; k < row.cols.size(); ++k) {
        const int slot = fill[row.cols[k]]++;
        index[slot] = r;
        value[slot] = row.coefs[k];
      }
    }
    row_start.assign(m + 1, 0);
    for (int r = 0; r < m; ++r) {
      row_start[r + 1] =
          row_start[r] + static_cast<int>(model.row(r).cols.size());
    }
    row_col.resize(row_start[m]);
    row_value.resize(row_start[m]);
    for (int r = 0; r < m; ++r) {
      const LpRow& row = model.row(r);
      std::copy(row.cols.begin(), row.cols.end(),
                row_col.begin() + row_start[r]);
      std::copy(row.coefs.begin(), row.coefs.end(),
                row_value.begin() + row_start[r]);
    }
    lower.resize(n + m);
    upper.resize(n + m);
    cost.assign(n + m, 0.0);
    for (int j = 0; j < n; ++j) {
      lower[j] = model.lower(j);
      upper[j] = model.upper(j);
      cost[j] = model.cost(j);
    }
    for (int r = 0; r < m; ++r) {
      const LpRow& row = model.row(r);
      double lo = -kInf, hi = kInf;
      if (row.sense != RowSense::kGreaterEqual) hi = row.rhs;
      if (row.sense != RowSense::kLessEqual) lo = row.rhs;
      lower[n + r] = lo;
      upper[n + r] = hi;
    }
  }

  template <typename F>
  void ForEach(int v, F&& f) const {
    if (v >= n) {
      f(v - n, -1.0);
      return;
    }
    for (int k = start[v]; k < start[v + 1]; ++k) f(index[k], value[k]);
  }

  double Dot(int v, const std::vector<double>& y) const {
    if (v >= n) return -y[v - n];
    double s = 0.0;
    for (int k = start[v]; k < start[v + 1]; ++k) s += value[k] * y[index[k]];
    return s;
  }

  // Basis columns in the layout BasisFactor::Factor expects.
  void BasisMatrix(const std::vector<int>& basic, std::vector<int>& logical,
                   std::vector<int>& cs, std::vector<int>& ri,
                   std::vector<double>& vals) const {
    logical.clear();
    cs.assign(1, 0);
    ri.clear();
    vals.clear();
    for (int v : basic) {
      if (v >= n) {
        logical.push_back(v - n);
      } else {
        logical.push_back(-1);
        for (int k = start[v]; k < start[v + 1]; ++k) {
          ri.push_back(index[k]);
          vals.push_back(value[k]);
        }
      }
      cs.push_back(static_cast<int>(ri.size()));
    }
  }
};

class Simplex {
 public:
  Simplex(const LpModel& model, const SolveLimits& limits)
      : model_(model), sf_(model), limits_(limits) {
    n_ = sf_.n;
    m_ = sf_.m;
    max_iterations_ = limits.max_iterations > 0
                          ? limits.max_iterations
                          : int64_t{50} * (n_ + m_);
  }

  LpSolution Run(std::span<const double> start);

 private:
  void Crash(std::span<const double> start);
  void Refactor();
  void RecomputeBasics();
  double MaxBasicInfeasibility() const;
  void ComputeDuals(bool phase1);
  void ComputeReducedCosts(bool phase1);
  // Improving direction of nonbasic v for reduced cost d (0 if none).
  int Direction(int v, double d) const;
  // Entering variable and its direction (+1 increase, -1 decrease).
  std::pair<int, int> Price(bool bland) const;
  // Pivot row e_r^T B^{-1} [A | -I] over nonbasic variables; fills
  // row_touched_ and row_alpha_.
  void PivotRow(int r);
  void SetNonbasicAtBound(int v);
  LpSolution Finish(SolveStatus status);

  const LpModel& model_;
  StandardForm sf_;
  SolveLimits limits_;
  int n_ = 0, m_ = 0;
  int64_t max_iterations_ = 0;
  int64_t iterations_ = 0;
  double feas_tol_ = kPrimalTol;
  bool time_limited_ = false;

  std::vector<double> x_;
  std::vector<VarState> state_;
  std::vector<int> basic_;   // basis position -> variable
  std::vector<int> pos_of_;  // variable -> basis position or -1
  std::vector<double> pi_;
  std::vector<double> d_;  // reduced costs of nonbasic variables
  bool d_valid_ = false;   // d_ holds phase 2 values kept by updates
  std::vector<double> weight_;  // Devex reference weights
  std::vector<double> rho_;
  std::vector<double> row_alpha_;
  std::vector<int> row_touched_;
  std::vector<char> row_mark_;
  BasisFactor factor_;
};

void Simplex::SetNonbasicAtBound(int v) {
  const double lo = sf_.lower[v], hi = sf_.upper[v];
  if (std::isfinite(lo) && std::isfinite(hi)) {
    const bool to_upper = std::abs(x_[v] - hi) < std::abs(x_[v] - lo);
    state_[v] = to_upper ? VarState::kAtUpper : VarState::kAtLower;
    x_[v] = to_upper ? hi : lo;
  } else if (std::isfinite(lo)) {
    state_[v] = VarState::kAtLower;
    x_[v] = lo;
  } else if (std::isfinite(hi)) {
    state_[v] = VarState::kAtUpper;
    x_[v] = hi;
  } else {
    state_[v] = VarState::kFree;
    x_[v] = 0.0;
  }
  pos_of_[v] = -1;
}

void Simplex::Refactor() {
  std::vector<int> logical, cs, ri;
  std::vector<double> vals;
  int next_row = 0;
  while (true) {
    sf_.BasisMatrix(basic_, logical, cs, ri, vals);
    if (factor_.Factor(m_, logical, cs, ri, vals)) break;
    // Swap the offending column for a logical that is not basic yet.
    const int p = factor_.singular_position();
    int replacement = -1;
    for (; next_row < m_ && replacement < 0; ++next_row) {
      if (pos_of_[n_ + next_row] < 0) replacement = n_ + next_row;
    }
    if (replacement < 0) throw NumericalError("simplex: basis repair failed");
    const int out = basic_[p];
    SetNonbasicAtBound(out);
    basic_[p] = replacement;
    pos_of_[replacement] = p;
    state_[replacement] = VarState::kBasic;
  }
  d_valid_ = false;
}

void Simplex::RecomputeBasics() {
  std::vector<double> rhs(m_, 0.0);
  for (int v = 0; v < n_ + m_; ++v) {
    if (state_[v] == VarState::kBasic || x_[v] == 0.0) continue;
    const double xv = x_[v];
    sf_.ForEach(v, [&](int r, double a) { rhs[r] -= a * xv; });
  }
  factor_.Ftran(rhs);
  for (int p = 0; p < m_; ++p) x_[basic_[p]] = rhs[p];
}

double Simplex::MaxBasicInfeasibility() const {
  double worst = 0.0;
  for (int v : basic_) {
    worst = std::max(worst, std::max(sf_.lower[v] - x_[v], x_[v] - sf_.upper[v]));
  }
  return worst;
}

void Simplex::ComputeDuals(bool phase1) {
  pi_.assign(m_, 0.0);
  for (int p = 0; p < m_; ++p) {
    const int v = basic_[p];
    if (phase1) {
      if (x_[v] < sf_.lower[v] - feas_tol_) pi_[p] = -1.0;
      else if (x_[v] > sf_.upper[v] + feas_tol_) pi_[p] = 1.0;
    } else {
      pi_[p] = sf_.cost[v];
    }
  }
  factor_.Btran(pi_);
}

void Simplex::ComputeReducedCosts(bool phase1) {
  ComputeDuals(phase1);
  for (int v = 0; v < n_ + m_; ++v) {
    d_[v] = state_[v] == VarState::kBasic
                ? 0.0
                : (phase1 ? 0.0 : sf_.cost[v]) - sf_.Dot(v, pi_);
  }
  d_valid_ = !phase1;
}

int Simplex::Direction(int v, double d) const {
  switch (state_[v]) {
    case VarState::kAtLower:
      return d < -kDualTol ? 1 : 0;
    case VarState::kAtUpper:
      return d > kDualTol ? -1 : 0;
    case VarState::kFree:
      return std::abs(d) > kDualTol ? (d < 0 ? 1 : -1) : 0;
    case VarState::kBasic:
      return 0;
  }
  return 0;
}

std::pair<int, int> Simplex::Price(bool bland) const {
  int best = -1, best_dir = 0;
  double best_score = 0.0;
  for (int v = 0; v < n_ + m_; ++v) {
    if (state_[v] == VarState::kBasic || sf_.lower[v] == sf_.upper[v]) continue;
    const int dir = Direction(v, d_[v]);
    if (dir == 0) continue;
    if (bland) return {v, dir};
    const double score = d_[v] * d_[v] / weight_[v];
    if (score > best_score) {
      best = v;
      best_dir = dir;
      best_score = score;
    }
  }
  return {best, best_dir};
}

void Simplex::PivotRow(int r) {
  for (int v : row_touched_) {
    row_mark_[v] = 0;
    row_alpha_[v] = 0.0;
  }
  row_touched_.clear();
  std::fill(rho_.begin(), rho_.end(), 0.0);
  rho_[r] = 1.0;
  factor_.Btran(rho_);
  auto touch = [&](int v, double a) {
    if (!row_mark_[v]) {
      row_mark_[v] = 1;
      row_touched_.push_back(v);
    }
    row_alpha_[v] += a;
  };
  for (int i = 0; i < m_; ++i) {
    const double rho = rho_[i];
    if (std::abs(rho) <= kDropTol) continue;
    for (int k = sf_.row_start[i]; k < sf_.row_start[i + 1]; ++k) {
      const int j = sf_.row_col[k];
      if (state_[j] != VarState::kBasic) touch(j, rho * sf_.row_value[k]);
    }
    if (state_[n_ + i] != VarState::kBasic) touch(n_ + i, -rho);
  }
}

void Simplex::Crash(std::span<const double> start) {
  std::vector<double> activity(m_, 0.0);
  for (int j = 0; j < n_; ++j) {
    x_[j] = start[j];
    sf_.ForEach(j, [&](int r, double a) { activity[r] += a * start[j]; });
  }
  auto tight = [&](int r) {
    const double lo = sf_.lower[n_ + r], hi = sf_.upper[n_ + r];
    return std::abs(activity[r] - lo) <= kPrimalTol ||
           std::abs(activity[r] - hi) <= kPrimalTol;
  };
  for (int j = 0; j < n_; ++j) {
    const double lo = sf_.lower[j], hi = sf_.upper[j];
    const double v = start[j];
    const bool at_bound = std::abs(v - lo) <= kPrimalTol ||
                          std::abs(v - hi) <= kPrimalTol ||
                          (std::isinf(lo) && std::isinf(hi) && v == 0.0);
    if (at_bound) {
      SetNonbasicAtBound(j);
      continue;
    }
    // Largest coefficient among tight rows whose logical is still basic.
    int row = -1;
    double best = 0.0;
    sf_.ForEach(j, [&](int r, double a) {
      if (pos_of_[n_ + r] >= 0 && tight(r) && std::abs(a) > best) {
        best = std::abs(a);
        row = r;
      }
    });
    if (row < 0) {
      SetNonbasicAtBound(j);
      continue;
    }
    const int p = pos_of_[n_ + row];
    x_[n_ + row] = activity[row];
    SetNonbasicAtBound(n_ + row);
    basic_[p] = j;
    pos_of_[j] = p;
    state_[j] = VarState::kBasic;
  }
}

LpSolution Simplex::Run(std::span<const double> start) {
  const auto started = std::chrono::steady_clock::now();
  x_.assign(n_ + m_, 0.0);
  state_.assign(n_ + m_, VarState::kAtLower);
  pos_of_.assign(n_ + m_, -1);
  d_.assign(n_ + m_, 0.0);
  weight_.assign(n_ + m_, 1.0);
  rho_.assign(m_, 0.0);
  row_alpha_.assign(n_ + m_, 0.0);
  row_mark_.assign(n_ + m_, 0);
  for (int v = 0; v < n_; ++v) SetNonbasicAtBound(v);
  basic_.resize(m_);
  for (int r = 0; r < m_; ++r) {
    basic_[r] = n_ + r;
    pos_of_[n_ + r] = r;
    state_[n_ + r] = VarState::kBasic;
  }
  if (!start.empty()) {
    if (static_cast<int>(start.size()) != n_) {
      throw ParameterError("start point has " + std::to_string(start.size()) +
                           " entries, model has " + std::to_string(n_) +
                           " columns");
    }
    Crash(start);
  }
  Refactor();
  RecomputeBasics();

  std::vector<double> alpha(m_);
  struct Candidate {
    int pos;
    double dist;
    double rate;  // |delta|
    bool to_upper;
  };
  std::vector<Candidate> cands;
  int degenerate_run = 0;
  bool bland = false;
  bool fresh = true;  // factor rebuilt since the last pivot
  bool was_phase1 = true;

  while (true) {
    if (factor_.num_etas() >= kRefactorInterval) {
      Refactor();
      RecomputeBasics();
      fresh = true;
    }
    const bool phase1 = MaxBasicInfeasibility() > feas_tol_;
    if (phase1 || !d_valid_ || was_phase1) ComputeReducedCosts(phase1);
    was_phase1 = phase1;

    auto [q, dir] = Price(bland);
    if (q < 0) {
      if (!fresh) {
        Refactor();
        RecomputeBasics();
        fresh = true;
        continue;
      }
      if (!phase1) return Finish(SolveStatus::kOptimal);
      if (MaxBasicInfeasibility() <= kRelaxedPrimalTol &&
          feas_tol_ < kRelaxedPrimalTol) {
        feas_tol_ = kRelaxedPrimalTol;
        continue;
      }
      return Finish(SolveStatus::kInfeasible);
    }

    if (iterations_ >= max_iterations_) {
      return Finish(SolveStatus::kIterationLimit);
    }
    if (limits_.time_budget_seconds > 0 && iterations_ % 50 == 0) {
      const double elapsed = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - started)
                                 .count();
      if (elapsed > limits_.time_budget_seconds) {
        time_limited_ = true;
        return Finish(SolveStatus::kIterationLimit);
      }
    }

    std::fill(alpha.begin(), alpha.end(), 0.0);
    sf_.ForEach(q, [&](int r, double a) { alpha[r] = a; });
    factor_.Ftran(alpha);

    // Ratio test. Basic p moves at rate delta = -dir * alpha[p].
    cands.clear();
    for (int p = 0; p < m_; ++p) {
      if (std::abs(alpha[p]) <= kPivotTol) continue;
      const int b = basic_[p];
      const double delta = -dir * alpha[p];
      const double xb = x_[b], lo = sf_.lower[b], hi = sf_.upper[b];
      if (phase1 && xb < lo - feas_tol_) {
        if (delta > 0) cands.push_back({p, lo - xb, delta, false});
      } else if (phase1 && xb > hi + feas_tol_) {
        if (delta < 0) cands.push_back({p, xb - hi, -delta, true});
      } else if (delta < 0) {
        if (std::isfinite(lo)) {
          cands.push_back({p, std::max(xb - lo, 0.0), -delta, false});
        }
      } else if (std::isfinite(hi)) {
        cands.push_back({p, std::max(hi - xb, 0.0), delta, true});
      }
    }

    const double range = sf_.upper[q] - sf_.lower[q];
    int chosen = -1;
    double theta = kInf;
    if (bland && !cands.empty()) {
      double tmin = kInf;
      for (const Candidate& c : cands) tmin = std::min(tmin, c.dist / c.rate);
      for (size_t k = 0; k < cands.size(); ++k) {
        if (cands[k].dist / cands[k].rate > tmin + kDegenerateStep) continue;
        if (chosen < 0 || basic_[cands[k].pos] < basic_[cands[chosen].pos]) {
          chosen = static_cast<int>(k);
        }
      }
      theta = cands[chosen].dist / cands[chosen].rate;
    } else if (!cands.empty()) {
      // Harris: largest pivot among steps within the relaxed bound.
      double bound = kInf;
      for (const Candidate& c : cands) {
        bound = std::min(bound, (c.dist + feas_tol_) / c.rate);
      }
      double best_rate = -1.0;
      for (size_t k = 0; k < cands.size(); ++k) {
        const double t = cands[k].dist / cands[k].rate;
        if (t <= bound && cands[k].rate > best_rate) {
          best_rate = cands[k].rate;
          chosen = static_cast<int>(k);
        }
      }
      theta = cands[chosen].dist / cands[chosen].rate;
    }

    const bool flip = std::isfinite(range) && range <= theta;
    if (flip) theta = range;
    if (!std::isfinite(theta)) {
      if (phase1) throw NumericalError("simplex: unbounded phase 1 ray");
      return Finish(SolveStatus::kUnbounded);
    }

    for (int p = 0; p < m_; ++p) {
      if (alpha[p] != 0.0) x_[basic_[p]] -= dir * theta * alpha[p];
    }
    x_[q] += dir * theta;
    if (flip) {
      state_[q] = dir > 0 ? VarState::kAtUpper : VarState::kAtLower;
      x_[q] = dir > 0 ? sf_.upper[q] : sf_.lower[q];
    } else {
      const Candidate& c = cands[chosen];
      const int r = c.pos;
      const int leaving = basic_[r];
      const double pivot = alpha[r];
      PivotRow(r);
      // Reduced cost and Devex updates along the pivot row.
      const double theta_d = d_[q] / pivot;
      const double wq = weight_[q];
      bool reset = false;
      for (int v : row_touched_) {
        if (v == q) continue;
        const double ratio = row_alpha_[v] / pivot;
        if (d_valid_) d_[v] -= theta_d * row_alpha_[v];
        weight_[v] = std::max(weight_[v], ratio * ratio * wq);
        reset = reset || weight_[v] > kDevexReset;
      }
      d_[q] = 0.0;
      d_[leaving] = -theta_d;
      weight_[leaving] = std::max(wq / (pivot * pivot), 1.0);
      if (reset) std::fill(weight_.begin(), weight_.end(), 1.0);

      state_[leaving] = c.to_upper ? VarState::kAtUpper : VarState::kAtLower;
      x_[leaving] = c.to_upper ? sf_.upper[leaving] : sf_.lower[leaving];
      pos_of_[leaving] = -1;
      basic_[r] = q;
      pos_of_[q] = r;
      state_[q] = VarState::kBasic;
      factor_.AddEta(r, alpha, kDropTol);
    }
    ++iterations_;
    fresh = false;

    if (theta <= kDegenerateStep) {
      if (++degenerate_run >= kBlandTrigger) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
  }
}

LpSolution Simplex::Finish(SolveStatus status) {
  LpSolution sol;
  sol.status = status;
  sol.iterations = iterations_;
  sol.time_limited = time_limited_;
  sol.values.assign(x_.begin(), x_.begin() + n_);
  // Snap nonbasic columns exactly onto their bounds.
  for (int j = 0; j < n_; ++j) {
    if (state_[j] == VarState::kAtLower) sol.values[j] = sf_.lower[j];
    if (state_[j] == VarState::kAtUpper) sol.values[j] = sf_.upper[j];
  }
  sol.objective = model_.Objective(sol.values);
  sol.basis = basic_;
  std::sort(sol.basis.begin(), sol.basis.end());
  sol.row_activity.resize(m_);
  for (int r = 0; r < m_; ++r) {
    sol.row_activity[r] = model_.RowActivity(r, sol.values);
  }
  sol.primal_feasible = MaxBasicInfeasibility() <= kRelaxedPrimalTol;

  ComputeDuals(false);
  sol.row_duals = pi_;
  sol.reduced_costs.resize(n_);
  double dual = 0.0;
  for (int v = 0; v < n_ + m_; ++v) {
    const double d = sf_.cost[v] - sf_.Dot(v, pi_);
    if (v < n_) sol.reduced_costs[v] = d;
    if (state_[v] == VarState::kBasic || d == 0.0) continue;
    double at = x_[v];
    if (d > kDualTol) at = sf_.lower[v];
    if (d < -kDualTol) at = sf_.upper[v];
    dual += d * at;
  }
  sol.dual_objective = dual;
  return sol;
}

}  // namespace

std::string_view SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "Optimal";
    case SolveStatus::kInfeasible:
      return "Infeasible";
    case SolveStatus::kUnbounded:
      return "Unbounded";
    case SolveStatus::kIterationLimit:
      return "IterationLimit";
  }
  return "?";
}

LpSolution Solve(const LpModel& model, const SolveLimits& limits,
                 std::span<const double> start) {
  Simplex simplex(model, limits);
  return simplex.Run(start);
}

LpSolution SolveVertexWithObjective(const School& school, int num_slots,
                                    std::span<const double> costs) {
  LpModel model = BuildSchoolPolytope(school, num_slots);
  if (static_cast<int>(costs.size()) != model.num_vars()) {
    throw ParameterError("objective has " + std::to_string(costs.size()) +
                         " entries, polytope has " +
                         std::to_string(model.num_vars()) + " columns");
  }
  for (int j = 0; j < model.num_vars(); ++j) model.set_cost(j, costs[j]);
  return Solve(model);
}

bool VerifyBasic(const LpModel& model, const LpSolution& solution,
                 double tol) {
  const StandardForm sf(model);
  if (static_cast<int>(solution.basis.size()) != sf.m ||
      static_cast<int>(solution.values.size()) != sf.n) {
    return false;
  }
  std::vector<double> full(sf.n + sf.m);
  for (int j = 0; j < sf.n; ++j) full[j] = solution.values[j];
  for (int r = 0; r < sf.m; ++r) full[sf.n + r] = model.RowActivity(r, solution.values);
  std::vector<char> is_basic(sf.n + sf.m, 0);
  for (int v : solution.basis) {
    if (v < 0 || v >= sf.n + sf.m || is_basic[v]) return false;
    is_basic[v] = 1;
  }
  std::vector<double> rhs(sf.m, 0.0);
  for (int v = 0; v < sf.n + sf.m; ++v) {
    if (is_basic[v]) continue;
    // Nonbasic: must sit on a bound (or at zero when free).
    double at;
    const double lo = sf.lower[v], hi = sf.upper[v];
    if (std::isfinite(lo) && std::abs(full[v] - lo) <= tol) at = lo;
    else if (std::isfinite(hi) && std::abs(full[v] - hi) <= tol) at = hi;
    else if (!std::isfinite(lo) && !std::isfinite(hi) && std::abs(full[v]) <= tol) at = 0.0;
    else return false;
    sf.ForEach(v, [&](int r, double a) { rhs[r] -= a * at; });
  }
  std::vector<int> logical, cs, ri;
  std::vector<double> vals;
  sf.BasisMatrix(solution.basis, logical, cs, ri, vals);
  BasisFactor factor;
  if (!factor.Factor(sf.m, logical, cs, ri, vals)) return false;
  factor.Ftran(rhs);
  for (int p = 0; p < sf.m; ++p) {
    if (std::abs(rhs[p] - full[solution.basis[p]]) > tol) return false;
  }
  return true;
}

}  // namespace sbsp
