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

#include "sbsp/basis_factor.h"

#include <klu.h>

#include <cmath>
#include <utility>

namespace sbsp {

struct BasisFactor::KluState {
  klu_common common;
  klu_symbolic* symbolic = nullptr;
  klu_numeric* numeric = nullptr;
};

BasisFactor::BasisFactor() : klu_(new KluState) {
  klu_defaults(&klu_->common);
}

BasisFactor::~BasisFactor() {
  Release();
  delete klu_;
}

void BasisFactor::Release() {
  if (klu_->numeric) klu_free_numeric(&klu_->numeric, &klu_->common);
  if (klu_->symbolic) klu_free_symbolic(&klu_->symbolic, &klu_->common);
}

bool BasisFactor::Factor(int dim, const std::vector<int>& logical_row,
                         const std::vector<int>& col_start,
                         const std::vector<int>& row_index,
                         const std::vector<double>& values) {
  Release();
  etas_.clear();
  dim_ = dim;
  singular_position_ = -1;
  kernel_pos_.clear();
  kernel_rows_.clear();
  logical_rows_.clear();
  kernel_index_.assign(dim, 0);
  logical_pos_.assign(dim, -1);
  for (int p = 0; p < dim; ++p) {
    const int r = logical_row[p];
    if (r < 0) {
      kernel_pos_.push_back(p);
    } else {
      logical_pos_[r] = p;
      kernel_index_[r] = -1;
      logical_rows_.push_back(r);
    }
  }
  for (int r = 0; r < dim; ++r) {
    if (kernel_index_[r] >= 0) {
      kernel_index_[r] = static_cast<int>(kernel_rows_.size());
      kernel_rows_.push_back(r);
    }
  }
  const int k = static_cast<int>(kernel_pos_.size());
  k_start_.assign(1, 0);
  o_start_.assign(1, 0);
  k_index_.clear();
  k_value_.clear();
  o_row_.clear();
  o_value_.clear();
  for (int c = 0; c < k; ++c) {
    const int p = kernel_pos_[c];
    for (int e = col_start[p]; e < col_start[p + 1]; ++e) {
      const int r = row_index[e];
      if (kernel_index_[r] >= 0) {
        k_index_.push_back(kernel_index_[r]);
        k_value_.push_back(values[e]);
      } else {
        o_row_.push_back(r);
        o_value_.push_back(values[e]);
      }
    }
    k_start_.push_back(static_cast<int>(k_index_.size()));
    o_start_.push_back(static_cast<int>(o_row_.size()));
  }
  work_.assign(k, 0.0);
  work2_.assign(dim, 0.0);
  if (k == 0) return true;

  klu_->symbolic =
      klu_analyze(k, k_start_.data(), k_index_.data(), &klu_->common);
  if (klu_->symbolic) {
    klu_->numeric = klu_factor(k_start_.data(), k_index_.data(),
                               k_value_.data(), klu_->symbolic, &klu_->common);
  }
  if (!klu_->symbolic || !klu_->numeric ||
      klu_->common.status == KLU_SINGULAR) {
    int c = static_cast<int>(klu_->common.singular_col);
    if (c < 0 || c >= k) c = 0;
    singular_position_ = kernel_pos_[c];
    Release();
    return false;
  }
  return true;
}

void BasisFactor::KernelSolve(std::vector<double>& x) {
  if (!kernel_pos_.empty()) {
    klu_solve(klu_->symbolic, klu_->numeric,
              static_cast<int>(kernel_pos_.size()), 1, x.data(), &klu_->common);
  }
}

void BasisFactor::KernelSolveTransposed(std::vector<double>& y) {
  if (!kernel_pos_.empty()) {
    klu_tsolve(klu_->symbolic, klu_->numeric,
               static_cast<int>(kernel_pos_.size()), 1, y.data(),
               &klu_->common);
  }
}

void BasisFactor::Ftran(std::vector<double>& x) {
  if (dim_ == 0) return;
  const int k = static_cast<int>(kernel_pos_.size());
  for (int c = 0; c < k; ++c) work_[c] = x[kernel_rows_[c]];
  KernelSolve(work_);
  // Logical of row r: y_r = sum_j a_rj x_j - b_r.
  for (int r : logical_rows_) work2_[r] = -x[r];
  for (int c = 0; c < k; ++c) {
    const double v = work_[c];
    if (v == 0.0) continue;
    for (int e = o_start_[c]; e < o_start_[c + 1]; ++e) {
      work2_[o_row_[e]] += o_value_[e] * v;
    }
  }
  for (int c = 0; c < k; ++c) x[kernel_pos_[c]] = work_[c];
  for (int r : logical_rows_) x[logical_pos_[r]] = work2_[r];

  for (const Eta& eta : etas_) {
    double& xr = x[eta.pos];
    if (xr == 0.0) continue;
    xr /= eta.pivot;
    const double v = xr;
    for (size_t i = 0; i < eta.index.size(); ++i) {
      x[eta.index[i]] -= eta.value[i] * v;
    }
  }
}

void BasisFactor::Btran(std::vector<double>& y) {
  if (dim_ == 0) return;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double sum = y[it->pos];
    for (size_t i = 0; i < it->index.size(); ++i) {
      sum -= it->value[i] * y[it->index[i]];
    }
    y[it->pos] = sum / it->pivot;
  }
  const int k = static_cast<int>(kernel_pos_.size());
  // Logical positions give pi_r = -c_p directly.
  for (int r : logical_rows_) work2_[r] = -y[logical_pos_[r]];
  for (int c = 0; c < k; ++c) {
    double v = y[kernel_pos_[c]];
    for (int e = o_start_[c]; e < o_start_[c + 1]; ++e) {
      v -= o_value_[e] * work2_[o_row_[e]];
    }
    work_[c] = v;
  }
  KernelSolveTransposed(work_);
  for (int c = 0; c < k; ++c) y[kernel_rows_[c]] = work_[c];
  for (int r : logical_rows_) y[r] = work2_[r];
}

void BasisFactor::AddEta(int pos, const std::vector<double>& alpha,
                         double drop_tol) {
  Eta eta;
  eta.pos = pos;
  eta.pivot = alpha[pos];
  for (int i = 0; i < dim_; ++i) {
    if (i != pos && std::abs(alpha[i]) > drop_tol) {
      eta.index.push_back(i);
      eta.value.push_back(alpha[i]);
    }
  }
  etas_.push_back(std::move(eta));
}

}  // namespace sbsp
