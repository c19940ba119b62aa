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

// Sparse LU of a simplex basis with a product-form eta file for column
// replacements between refactorizations.
//
// Basis columns are either logicals (-e_r) or sparse structural columns.
// With rows R2 covered by basic logicals and R1 the rest, the basis is
// block triangular after permutation and only the kernel A[R1, structural]
// is factored (KLU); logical entries follow by substitution.

#ifndef SBSP_BASIS_FACTOR_H_
#define SBSP_BASIS_FACTOR_H_

#include <vector>

namespace sbsp {

class BasisFactor {
 public:
  BasisFactor();
  ~BasisFactor();
  BasisFactor(const BasisFactor&) = delete;
  BasisFactor& operator=(const BasisFactor&) = delete;

  // Position p holds the logical of row logical_row[p], or, when that is
  // -1, the structural column p of the compressed-column arrays (entries of
  // logical positions are ignored there). Clears the eta file. Returns false
  // if the basis is numerically singular; singular_position() then names a
  // structural position to replace.
  bool Factor(int dim, const std::vector<int>& logical_row,
              const std::vector<int>& col_start,
              const std::vector<int>& row_index,
              const std::vector<double>& values);

  // x <- B^{-1} x (row-indexed in, position-indexed out)
  void Ftran(std::vector<double>& x);
  // y <- B^{-T} y (position-indexed in, row-indexed out)
  void Btran(std::vector<double>& y);

  // Records that basis position `pos` was replaced by a column whose FTRAN
  // image is `alpha` (dense, alpha[pos] != 0).
  void AddEta(int pos, const std::vector<double>& alpha, double drop_tol);

  int num_etas() const { return static_cast<int>(etas_.size()); }
  int singular_position() const { return singular_position_; }
  int dim() const { return dim_; }

 private:
  struct Eta {
    int pos;
    double pivot;
    std::vector<int> index;
    std::vector<double> value;
  };

  void Release();
  void KernelSolve(std::vector<double>& x);
  void KernelSolveTransposed(std::vector<double>& y);

  struct KluState;
  KluState* klu_;
  int dim_ = 0;
  int singular_position_ = -1;
  std::vector<int> kernel_pos_;    // kernel column -> basis position
  std::vector<int> kernel_index_;  // row -> kernel row, -1 for R2 rows
  std::vector<int> kernel_rows_;   // kernel row -> row
  std::vector<int> logical_pos_;   // row -> basis position of its logical
  std::vector<int> logical_rows_;  // rows in R2
  // Kernel matrix (compressed columns).
  std::vector<int> k_start_, k_index_;
  std::vector<double> k_value_;
  // Entries of the structural basis columns in R2 rows.
  std::vector<int> o_start_, o_row_;
  std::vector<double> o_value_;
  std::vector<double> work_, work2_;
  std::vector<Eta> etas_;
};

}  // namespace sbsp

#endif  // SBSP_BASIS_FACTOR_H_
