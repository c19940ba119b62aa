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

#include "sbsp/instance.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <utility>

#include "json.hpp"
#include "sbsp/errors.h"
#include "sbsp/rng.h"

namespace sbsp {
namespace {

using nlohmann::json;

std::string SchoolPrefix(int n) { return "school " + std::to_string(n); }

int RoundedLow(double a) {
  return std::max(1, static_cast<int>(std::lround(a)));
}

// Draw from U(a, b) rounded to the nearest integer, lower end clamped to 1.
int DrawRounded(Rng& rng, double a, double b) {
  const int lo = RoundedLow(a);
  const int hi = std::max(lo, static_cast<int>(std::lround(b)));
  return static_cast<int>(rng.UniformInt(lo, hi));
}

int ReadInt(const json& obj, const char* field, const std::string& where) {
  auto it = obj.find(field);
  if (it == obj.end()) {
    throw SchemaError(where + ": missing field \"" + field + "\"");
  }
  if (!it->is_number_integer()) {
    throw SchemaError(where + ": field \"" + field + "\" must be an integer");
  }
  return it->get<int>();
}

void RejectExtras(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* name : allowed) known = known || it.key() == name;
    if (!known) {
      throw SchemaError(where + ": unexpected field \"" + it.key() + "\"");
    }
  }
}

}  // namespace

void ValidateInstance(const Instance& inst) {
  if (inst.num_slots < 1) {
    throw SchemaError("instance: field \"M\" must be >= 1");
  }
  if (inst.schools.empty()) {
    throw SchemaError("instance: field \"schools\" must not be empty");
  }
  for (int n = 0; n < inst.num_schools(); ++n) {
    const School& school = inst.schools[n];
    if (school.window < 0) {
      throw SchemaError(SchoolPrefix(n) + ": field \"l\" must be >= 0");
    }
    if (school.route_lengths.empty()) {
      throw SchemaError(SchoolPrefix(n) + " has no routes");
    }
    for (int i = 0; i < school.num_routes(); ++i) {
      const int r = school.route_lengths[i];
      if (r < 1) {
        throw SchemaError(SchoolPrefix(n) + " route " + std::to_string(i) +
                          ": field \"routes\" entries must be >= 1");
      }
      if (r > inst.num_slots) {
        throw SchemaError(SchoolPrefix(n) + " route " + std::to_string(i) +
                          ": field \"routes\" entry " + std::to_string(r) +
                          " exceeds M=" + std::to_string(inst.num_slots));
      }
    }
  }
}

Instance MakeInstance(int num_slots, std::vector<School> schools,
                      bool truncate_routes) {
  Instance inst{num_slots, std::move(schools)};
  if (truncate_routes && num_slots >= 1) {
    for (School& school : inst.schools) {
      for (int& r : school.route_lengths) r = std::min(r, num_slots);
    }
  }
  ValidateInstance(inst);
  return inst;
}

InstanceStats DerivedStats(const Instance& inst) {
  InstanceStats stats;
  for (const School& school : inst.schools) {
    stats.gamma_max = std::max(stats.gamma_max, school.num_routes());
    stats.total_routes += school.num_routes();
    for (int r : school.route_lengths) stats.k_max = std::max(stats.k_max, r);
  }
  return stats;
}

Instance ApplyTransitionTime(const Instance& inst, int delta) {
  if (delta < 0) throw ParameterError("transition time must be >= 0");
  Instance out = inst;
  for (School& school : out.schools) {
    for (int& r : school.route_lengths) {
      r = static_cast<int>(
          std::min<int64_t>(static_cast<int64_t>(r) + delta, inst.num_slots));
    }
  }
  return out;
}

Instance AsSsp(const Instance& inst) {
  Instance out = inst;
  for (School& school : out.schools) school.window = 0;
  return out;
}

std::string SaveInstance(const Instance& inst) {
  json doc;
  doc["M"] = inst.num_slots;
  json schools = json::array();
  for (const School& school : inst.schools) {
    schools.push_back({{"l", school.window}, {"routes", school.route_lengths}});
  }
  doc["schools"] = std::move(schools);
  return doc.dump();
}

Instance LoadInstance(std::string_view text, bool truncate_routes) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("instance: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("instance: document must be an object");
  RejectExtras(doc, {"M", "schools"}, "instance");
  const int num_slots = ReadInt(doc, "M", "instance");
  auto schools_it = doc.find("schools");
  if (schools_it == doc.end()) {
    throw SchemaError("instance: missing field \"schools\"");
  }
  if (!schools_it->is_array()) {
    throw SchemaError("instance: field \"schools\" must be an array");
  }
  std::vector<School> schools;
  for (size_t n = 0; n < schools_it->size(); ++n) {
    const json& entry = (*schools_it)[n];
    const std::string where = SchoolPrefix(static_cast<int>(n));
    if (!entry.is_object()) throw SchemaError(where + ": must be an object");
    RejectExtras(entry, {"l", "routes"}, where);
    School school;
    school.window = ReadInt(entry, "l", where);
    auto routes_it = entry.find("routes");
    if (routes_it == entry.end()) {
      throw SchemaError(where + ": missing field \"routes\"");
    }
    if (!routes_it->is_array()) {
      throw SchemaError(where + ": field \"routes\" must be an array");
    }
    for (const json& r : *routes_it) {
      if (!r.is_number_integer()) {
        throw SchemaError(where + ": field \"routes\" entries must be integers");
      }
      school.route_lengths.push_back(r.get<int>());
    }
    schools.push_back(std::move(school));
  }
  return MakeInstance(num_slots, std::move(schools), truncate_routes);
}

std::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kBase:
      return "base";
    case Family::kShortWindow:
      return "short-window";
    case Family::kShortRouteLiteral:
      return "short-route";
    case Family::kMixedSchool:
      return "mixed-school";
    case Family::kShortRouteLength:
      return "short-route-length";
  }
  return "unknown";
}

Family ParseFamily(std::string_view name) {
  for (Family f : {Family::kBase, Family::kShortWindow,
                   Family::kShortRouteLiteral, Family::kMixedSchool,
                   Family::kShortRouteLength}) {
    if (FamilyName(f) == name) return f;
  }
  if (name == "1") return Family::kBase;
  if (name == "2") return Family::kShortWindow;
  if (name == "3") return Family::kShortRouteLiteral;
  if (name == "4") return Family::kMixedSchool;
  throw ParameterError("unknown family \"" + std::string(name) + "\"");
}

const std::vector<Family>& DefaultFamilies() {
  static const std::vector<Family> kFamilies = {
      Family::kBase, Family::kShortWindow, Family::kShortRouteLiteral,
      Family::kMixedSchool};
  return kFamilies;
}

SizeParams FullSize(int size_class) {
  switch (size_class) {
    case 1:
      return {10, 5, 50};
    case 2:
      return {30, 50, 50};
    case 3:
      return {50, 50, 100};
    case 4:
      return {50, 100, 100};
  }
  throw ParameterError("size class must be in 1..4, got " +
                       std::to_string(size_class));
}

SizeParams DeskSize(int size_class) {
  switch (size_class) {
    case 1:
      return {10, 5, 15};
    case 2:
      return {30, 50, 15};
    case 3:
      return {50, 50, 20};
    case 4:
      return {50, 100, 20};
  }
  throw ParameterError("size class must be in 1..4, got " +
                       std::to_string(size_class));
}

SizeParams ParseSizeLabel(std::string_view label) {
  if (label.size() == 1 && label[0] >= '1' && label[0] <= '4') {
    return FullSize(label[0] - '0');
  }
  if (label.size() == 2 && label[0] >= '1' && label[0] <= '4' &&
      (label[1] == 'p' || label[1] == '\'')) {
    return DeskSize(label[0] - '0');
  }
  // Explicit "<M>x<N>x<Gamma_max>".
  SizeParams explicit_size;
  int* fields[] = {&explicit_size.num_slots, &explicit_size.num_schools,
                   &explicit_size.gamma_max};
  std::string_view rest = label;
  bool ok = true;
  for (int k = 0; k < 3 && ok; ++k) {
    const size_t cut = k < 2 ? rest.find('x') : rest.size();
    if (cut == std::string_view::npos) {
      ok = false;
      break;
    }
    const std::string_view piece = rest.substr(0, cut);
    auto [ptr, ec] =
        std::from_chars(piece.data(), piece.data() + piece.size(), *fields[k]);
    ok = ec == std::errc() && ptr == piece.data() + piece.size() &&
         *fields[k] >= 1;
    if (k < 2) rest = rest.substr(std::min(cut + 1, rest.size()));
  }
  if (ok) return explicit_size;
  throw ParameterError("unknown size label \"" + std::string(label) + "\"");
}

Instance GenerateInstance(const GeneratorSpec& spec) {
  const SizeParams& size = spec.size;
  if (size.num_slots < 1 || size.num_schools < 1 || size.gamma_max < 1) {
    throw ParameterError("generator sizes M, N, Gamma_max must be positive");
  }
  const double m = size.num_slots;
  const double g = size.gamma_max;
  Rng rng(spec.seed);
  std::vector<School> schools;
  schools.reserve(size.num_schools);
  for (int n = 1; n <= size.num_schools; ++n) {
    int gamma;
    switch (spec.family) {
      case Family::kShortRouteLiteral:
        gamma = DrawRounded(rng, 1, g / 3);
        break;
      case Family::kMixedSchool:
        gamma = n <= size.num_schools / 2 ? DrawRounded(rng, 1, g / 3)
                                          : DrawRounded(rng, 2 * g / 3, g);
        break;
      default:
        gamma = DrawRounded(rng, 1, g);
        break;
    }
    School school;
    school.window = spec.family == Family::kShortWindow
                        ? DrawRounded(rng, 1, m / 3)
                        : DrawRounded(rng, 1, m);
    const double route_hi =
        spec.family == Family::kShortRouteLength ? m / 3 : m;
    school.route_lengths.reserve(gamma);
    for (int i = 0; i < gamma; ++i) {
      school.route_lengths.push_back(DrawRounded(rng, 1, route_hi));
    }
    schools.push_back(std::move(school));
  }
  return MakeInstance(size.num_slots, std::move(schools));
}

}  // namespace sbsp
