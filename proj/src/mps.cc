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

#include "sbsp/mps.h"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>

#include "sbsp/errors.h"

namespace sbsp {
namespace {

SchemaError BadLine(int line_no, const std::string& what) {
  return SchemaError("MPS line " + std::to_string(line_no) + ": " + what);
}

constexpr size_t kFixedNameWidth = 8;
constexpr size_t kFixedNumberWidth = 12;
constexpr char kObjectiveRow[] = "OBJ";

// Shortest %g rendering that fits the fixed-format number field.
std::string FixedNumber(double v) {
  char buf[64];
  for (int precision = 12; precision >= 1; --precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strlen(buf) <= kFixedNumberWidth) return buf;
  }
  return buf;
}

std::string FreeNumber(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Pad(std::string_view s, size_t width) {
  std::string out(s);
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

class Writer {
 public:
  explicit Writer(bool free_format) : free_(free_format) {}

  // Field 1 (code), field 2 (name), field 3 (name), field 4 (number).
  void Line(std::string_view code, std::string_view f2, std::string_view f3,
            const std::string& f4) {
    if (free_) {
      out_ << ' ';
      if (!code.empty()) out_ << code << ' ';
      out_ << f2;
      if (!f3.empty()) out_ << ' ' << f3;
      if (!f4.empty()) out_ << ' ' << f4;
      out_ << '\n';
      return;
    }
    std::string line = " " + Pad(code, 2) + " " + Pad(f2, kFixedNameWidth);
    if (!f3.empty() || !f4.empty()) {
      line += "  " + Pad(f3, kFixedNameWidth);
      if (!f4.empty()) line += "  " + f4;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out_ << line << '\n';
  }

  std::string Number(double v) const {
    return free_ ? FreeNumber(v) : FixedNumber(v);
  }

  std::ostringstream& raw() { return out_; }

 private:
  bool free_;
  std::ostringstream out_;
};

char SenseCode(RowSense sense) {
  switch (sense) {
    case RowSense::kLessEqual:
      return 'L';
    case RowSense::kGreaterEqual:
      return 'G';
    case RowSense::kEqual:
      return 'E';
  }
  return 'L';
}

RowFamily FamilyFromRowName(std::string_view name) {
  static const std::pair<std::string_view, RowFamily> kPrefixes[] = {
      {"WIN_", RowFamily::kWindowS}, {"RWa_", RowFamily::kWindowS},
      {"RWb_", RowFamily::kWindowS}, {"MON_", RowFamily::kMonotone},
      {"TRM_", RowFamily::kTerminal}, {"LD_", RowFamily::kLoadS},
      {"AX_", RowFamily::kAssignX}, {"LX_", RowFamily::kLoadX},
      {"WX_", RowFamily::kWindowX}, {"AY_", RowFamily::kAssignY},
      {"LY_", RowFamily::kLoadY}};
  for (const auto& [prefix, family] : kPrefixes) {
    if (name.substr(0, prefix.size()) == prefix) return family;
  }
  return RowFamily::kOther;
}

double ParseNumber(std::string_view token, int line_no) {
  double v = 0.0;
  const std::string s(token);
  char* end = nullptr;
  v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw SchemaError("MPS line " + std::to_string(line_no) +
                      ": bad number \"" + s + "\"");
  }
  return v;
}

std::vector<std::string_view> Tokens(std::string_view line) {
  std::vector<std::string_view> out;
  size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k])))
      ++k;
    size_t start = k;
    while (k < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[k])))
      ++k;
    if (k > start) out.push_back(line.substr(start, k - start));
  }
  return out;
}

}  // namespace

std::optional<VarKey> ParseVarName(std::string_view name) {
  if (name == "z") return VarKey{VarFamily::kZ};
  if (name.size() < 3 || name[1] != '_') return std::nullopt;
  VarFamily family;
  size_t parts_needed;
  switch (name[0]) {
    case 'S':
      family = VarFamily::kS;
      parts_needed = 3;
      break;
    case 'x':
      family = VarFamily::kX;
      parts_needed = 3;
      break;
    case 'y':
      family = VarFamily::kY;
      parts_needed = 2;
      break;
    case 'W':
      family = VarFamily::kW;
      parts_needed = 2;
      break;
    default:
      return std::nullopt;
  }
  std::vector<int> parts;
  std::string_view rest = name.substr(2);
  while (!rest.empty()) {
    const size_t cut = rest.find('_');
    std::string_view piece = rest.substr(0, cut);
    int v = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (ec != std::errc() || ptr != piece.data() + piece.size() || v < 1) {
      return std::nullopt;
    }
    parts.push_back(v);
    if (cut == std::string_view::npos) break;
    rest = rest.substr(cut + 1);
  }
  if (parts.size() != parts_needed) return std::nullopt;
  if (parts_needed == 2) return VarKey{family, parts[0] - 1, -1, parts[1]};
  return VarKey{family, parts[0] - 1, parts[1] - 1, parts[2]};
}

MpsExport ExportMps(const LpModel& model, std::string_view name) {
  MpsExport result;
  bool fits = true;
  for (int j = 0; j < model.num_vars() && fits; ++j) {
    fits = model.var_name(j).size() <= kFixedNameWidth;
  }
  for (const LpRow& row : model.rows()) {
    if (!fits) break;
    fits = row.name.size() <= kFixedNameWidth;
  }
  result.free_format = !fits;
  if (result.free_format) {
    result.warnings.push_back(
        "names exceed 8 characters; wrote free-format MPS");
  }

  // Column-wise view of the rows.
  std::vector<std::vector<std::pair<int, double>>> by_col(model.num_vars());
  for (int r = 0; r < model.num_rows(); ++r) {
    const LpRow& row = model.row(r);
    for (size_t k = 0; k < row.cols.size(); ++k) {
      by_col[row.cols[k]].emplace_back(r, row.coefs[k]);
    }
  }

  Writer w(result.free_format);
  auto& out = w.raw();
  if (result.free_format) {
    out << "* WARNING: " << result.warnings.back() << '\n';
    out << "NAME " << name << '\n';
  } else {
    out << "NAME          " << name << '\n';
  }
  out << "OBJSENSE\n    MIN\n";
  out << "ROWS\n";
  w.Line("N", kObjectiveRow, "", "");
  for (const LpRow& row : model.rows()) {
    w.Line(std::string(1, SenseCode(row.sense)), row.name, "", "");
  }
  out << "COLUMNS\n";
  for (int j = 0; j < model.num_vars(); ++j) {
    const std::string& col = model.var_name(j);
    if (model.cost(j) != 0.0 || by_col[j].empty()) {
      w.Line("", col, kObjectiveRow, w.Number(model.cost(j)));
    }
    for (const auto& [r, v] : by_col[j]) {
      w.Line("", col, model.row(r).name, w.Number(v));
    }
  }
  out << "RHS\n";
  for (const LpRow& row : model.rows()) {
    if (row.rhs != 0.0) w.Line("", "RHS", row.name, w.Number(row.rhs));
  }
  out << "BOUNDS\n";
  for (int j = 0; j < model.num_vars(); ++j) {
    const double lo = model.lower(j);
    const double hi = model.upper(j);
    const std::string& col = model.var_name(j);
    if (lo == hi) {
      w.Line("FX", "BND", col, w.Number(lo));
      continue;
    }
    if (std::isinf(lo) && std::isinf(hi)) {
      w.Line("FR", "BND", col, "");
      continue;
    }
    if (std::isinf(lo)) {
      w.Line("MI", "BND", col, "");
    } else if (lo != 0.0) {
      w.Line("LO", "BND", col, w.Number(lo));
    }
    if (!std::isinf(hi)) w.Line("UP", "BND", col, w.Number(hi));
  }
  out << "ENDATA\n";
  result.text = out.str();
  return result;
}

LpModel ImportMps(std::string_view text) {
  enum class Section { kNone, kName, kObjSense, kRows, kColumns, kRhs, kRanges,
                       kBounds, kEnd };
  Section section = Section::kNone;
  std::string objective_row;
  bool maximize = false;

  struct RowInfo {
    std::string name;
    RowSense sense;
    double rhs = 0.0;
    std::optional<double> range;
    std::vector<int> cols;
    std::vector<double> coefs;
  };
  std::vector<RowInfo> rows;
  std::unordered_map<std::string, int> row_index;
  std::vector<std::string> col_names;
  std::unordered_map<std::string, int> col_index;
  std::vector<double> costs, lower, upper;

  auto column = [&](std::string_view name) {
    const std::string key(name);
    auto it = col_index.find(key);
    if (it != col_index.end()) return it->second;
    const int idx = static_cast<int>(col_names.size());
    col_index.emplace(key, idx);
    col_names.push_back(key);
    costs.push_back(0.0);
    lower.push_back(0.0);
    upper.push_back(kInf);
    return idx;
  };
  auto row_of = [&](std::string_view name, int line_no) {
    auto it = row_index.find(std::string(name));
    if (it == row_index.end()) {
      throw SchemaError("MPS line " + std::to_string(line_no) +
                        ": unknown row \"" + std::string(name) + "\"");
    }
    return it->second;
  };

  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size() && section != Section::kEnd) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line[0] == '*') continue;
    auto tok = Tokens(line);
    if (tok.empty()) continue;
    if (!std::isspace(static_cast<unsigned char>(line[0]))) {
      const std::string_view head = tok[0];
      if (head == "NAME") section = Section::kName;
      else if (head == "OBJSENSE") {
        section = Section::kObjSense;
        if (tok.size() > 1) maximize = tok[1] == "MAX" || tok[1] == "MAXIMIZE";
      } else if (head == "ROWS") section = Section::kRows;
      else if (head == "COLUMNS") section = Section::kColumns;
      else if (head == "RHS") section = Section::kRhs;
      else if (head == "RANGES") section = Section::kRanges;
      else if (head == "BOUNDS") section = Section::kBounds;
      else if (head == "ENDATA") section = Section::kEnd;
      else throw SchemaError("MPS line " + std::to_string(line_no) +
                             ": unknown section \"" + std::string(head) + "\"");
      continue;
    }
    switch (section) {
      case Section::kObjSense:
        maximize = tok[0] == "MAX" || tok[0] == "MAXIMIZE";
        break;
      case Section::kRows: {
        if (tok.size() < 2) throw BadLine(line_no, "bad ROWS entry");
        const std::string_view code = tok[0];
        if (code == "N") {
          if (objective_row.empty()) objective_row = tok[1];
          break;
        }
        RowSense sense;
        if (code == "L") sense = RowSense::kLessEqual;
        else if (code == "G") sense = RowSense::kGreaterEqual;
        else if (code == "E") sense = RowSense::kEqual;
        else throw BadLine(line_no, "bad row type");
        row_index.emplace(std::string(tok[1]), static_cast<int>(rows.size()));
        rows.push_back({std::string(tok[1]), sense, 0.0, std::nullopt, {}, {}});
        break;
      }
      case Section::kColumns: {
        if (tok.size() >= 3 && tok[1] == "'MARKER'") break;
        if (tok.size() != 3 && tok.size() != 5) {
          throw BadLine(line_no, "bad COLUMNS entry");
        }
        const int col = column(tok[0]);
        for (size_t k = 1; k + 1 < tok.size(); k += 2) {
          const double v = ParseNumber(tok[k + 1], line_no);
          if (tok[k] == objective_row) {
            costs[col] += v;
          } else {
            RowInfo& row = rows[row_of(tok[k], line_no)];
            row.cols.push_back(col);
            row.coefs.push_back(v);
          }
        }
        break;
      }
      case Section::kRhs:
      case Section::kRanges: {
        // Optional set name in front: an odd token count means it is there.
        const size_t first = tok.size() % 2 == 1 ? 1 : 0;
        for (size_t k = first; k + 1 < tok.size(); k += 2) {
          const double v = ParseNumber(tok[k + 1], line_no);
          if (section == Section::kRhs && tok[k] == objective_row) continue;
          RowInfo& row = rows[row_of(tok[k], line_no)];
          if (section == Section::kRhs) row.rhs = v;
          else row.range = v;
        }
        break;
      }
      case Section::kBounds: {
        if (tok.size() < 3) throw BadLine(line_no, "bad BOUNDS entry");
        const std::string_view type = tok[0];
        const bool valued = type == "UP" || type == "LO" || type == "FX" ||
                            type == "LI" || type == "UI";
        // With a value: type set col value (4) or type col value (3).
        std::string_view col_name;
        double v = 0.0;
        if (valued) {
          col_name = tok.size() >= 4 ? tok[2] : tok[1];
          v = ParseNumber(tok.back(), line_no);
        } else {
          col_name = tok.size() >= 3 ? tok[2] : tok[1];
        }
        const int col = column(col_name);
        if (type == "UP" || type == "UI") upper[col] = v;
        else if (type == "LO" || type == "LI") lower[col] = v;
        else if (type == "FX") lower[col] = upper[col] = v;
        else if (type == "FR") { lower[col] = -kInf; upper[col] = kInf; }
        else if (type == "MI") lower[col] = -kInf;
        else if (type == "PL") upper[col] = kInf;
        else if (type == "BV") { lower[col] = 0.0; upper[col] = 1.0; }
        else throw BadLine(line_no, "bad bound type");
        break;
      }
      default:
        break;
    }
  }
  if (section != Section::kEnd) throw SchemaError("MPS: missing ENDATA");

  LpModel model;
  int max_school = -1, max_slot = 0;
  std::map<int, int> routes;
  for (size_t j = 0; j < col_names.size(); ++j) {
    auto key = ParseVarName(col_names[j]);
    if (key && model.FindColumn(*key)) key.reset();
    model.AddVariable(col_names[j], lower[j], upper[j],
                      maximize ? -costs[j] : costs[j], key);
    if (key && key->family != VarFamily::kZ) {
      max_school = std::max(max_school, key->school);
      max_slot = std::max(max_slot, key->slot);
      routes[key->school] = std::max(routes[key->school], key->route + 1);
    }
  }
  model.shape.num_slots = max_slot;
  for (int n = 0; n <= max_school; ++n) {
    model.shape.routes_per_school.push_back(std::max(routes[n], 1));
  }
  for (RowInfo& info : rows) {
    LpRow row{info.name, FamilyFromRowName(info.name), info.sense, info.rhs,
              std::move(info.cols), std::move(info.coefs)};
    if (info.range) {
      // Ranged rows become a pair of inequalities.
      const double r = std::abs(*info.range);
      double lo = info.rhs, hi = info.rhs;
      if (info.sense == RowSense::kLessEqual) lo = info.rhs - r;
      else if (info.sense == RowSense::kGreaterEqual) hi = info.rhs + r;
      else if (*info.range > 0) hi = info.rhs + r;
      else lo = info.rhs - r;
      LpRow upper_row = row;
      upper_row.sense = RowSense::kLessEqual;
      upper_row.rhs = hi;
      row.sense = RowSense::kGreaterEqual;
      row.rhs = lo;
      model.AddRow(std::move(row));
      upper_row.name += "_hi";
      model.AddRow(std::move(upper_row));
    } else {
      model.AddRow(std::move(row));
    }
  }
  return model;
}

}  // namespace sbsp
