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

// MPS export/import for LpModel.
//
// Column and row names follow the model (S_n_i_m, z, WIN_n_i_j_m, ...).
// Fixed-format MPS is written when every name fits the 8-character fields;
// otherwise the writer switches to free-format MPS and records a warning.

#ifndef SBSP_MPS_H_
#define SBSP_MPS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sbsp/lp_model.h"

namespace sbsp {

struct MpsExport {
  std::string text;
  bool free_format = false;
  std::vector<std::string> warnings;
};

MpsExport ExportMps(const LpModel& model, std::string_view name = "SBSP");

// Reads fixed or free MPS (names must not contain blanks). Variable keys and
// the model shape are recovered from the S_/x_/y_/z naming scheme when
// present. Throws SchemaError on malformed input.
LpModel ImportMps(std::string_view text);

// Inverse of the column naming scheme ("S_2_1_5" -> {kS, 1, 0, 5}).
std::optional<VarKey> ParseVarName(std::string_view name);

}  // namespace sbsp

#endif  // SBSP_MPS_H_
