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

// Problem instances for the school bus scheduling problem (SBSP).
//
// N schools share a horizon of M discrete start slots. School n has
// Gamma_n routes of lengths r(i,n) (in slots) and a window l_n: on the
// inverted timeline, the start slots of its routes may differ by at most l_n.
// The school scheduling problem (SSP) is the special case l_n = 0.
//
// Slots are 1-based throughout the public API ([1, M]); schools and routes
// are 0-based indices into the vectors below.

#ifndef SBSP_INSTANCE_H_
#define SBSP_INSTANCE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sbsp {

struct School {
  int window = 0;                  // l_n
  std::vector<int> route_lengths;  // r(i,n), i in [Gamma_n]

  int num_routes() const { return static_cast<int>(route_lengths.size()); }
  bool operator==(const School&) const = default;
};

struct Instance {
  int num_slots = 0;  // M
  std::vector<School> schools;

  int num_schools() const { return static_cast<int>(schools.size()); }
  bool operator==(const Instance&) const = default;
};

struct InstanceStats {
  int gamma_max = 0;
  int k_max = 0;
  int total_routes = 0;
};

// Builds a validated instance. Route lengths above M are truncated to M
// unless `truncate_routes` is false, in which case they are rejected.
// Windows are kept as given (any l_n >= M-1 places no restriction).
Instance MakeInstance(int num_slots, std::vector<School> schools,
                      bool truncate_routes = true);

// Throws SchemaError naming the offending field.
void ValidateInstance(const Instance& inst);

InstanceStats DerivedStats(const Instance& inst);

// Folds a constant bus transition time into every route length, truncating
// at M.
Instance ApplyTransitionTime(const Instance& inst, int delta);

// Same routes with every window set to zero (SSP semantics).
Instance AsSsp(const Instance& inst);

// ---------------------------------------------------------------------------
// Serialization: {"M": int, "schools": [{"l": int, "routes": [int, ...]}]}
// ---------------------------------------------------------------------------

std::string SaveInstance(const Instance& inst);
Instance LoadInstance(std::string_view text, bool truncate_routes = true);

// ---------------------------------------------------------------------------
// Random generator families.
// ---------------------------------------------------------------------------

enum class Family {
  kBase,               // Gamma ~ U(1,Gmax), l ~ U(1,M),   r ~ U(1,M)
  kShortWindow,        // l ~ U(1, M/3)
  kShortRouteLiteral,  // Gamma ~ U(1, Gmax/3)
  kMixedSchool,        // first floor(N/2) schools small, the rest large
  kShortRouteLength,   // r ~ U(1, M/3); alternate reading of the short-route
                       // family, never selected by default
};

std::string_view FamilyName(Family family);
Family ParseFamily(std::string_view name);  // throws ParameterError

// The four default families, in report order.
const std::vector<Family>& DefaultFamilies();

struct SizeParams {
  int num_slots = 0;    // M
  int num_schools = 0;  // N
  int gamma_max = 0;    // Gamma_max
  bool operator==(const SizeParams&) const = default;
};

// Full-size classes 1..4.
SizeParams FullSize(int size_class);

// Desk-scale classes 1..4: Gamma_max shrunk so the bundled simplex handles
// them comfortably (2' = M 30, N 50, Gamma_max 15).
SizeParams DeskSize(int size_class);

// Parses "1".."4" (full size), "1p".."4p" (desk scale) or an explicit
// "<M>x<N>x<Gamma_max>" such as "6x3x3".
SizeParams ParseSizeLabel(std::string_view label);

struct GeneratorSpec {
  SizeParams size;
  Family family = Family::kBase;
  uint64_t seed = 0;
};

// Draws Gamma_n, l_n and r(i,n) per school (in that order) from the
// family's discrete uniforms. U(a,b) is the uniform over integers in
// [max(1, round(a)), round(b)]. Pure function of `spec`.
Instance GenerateInstance(const GeneratorSpec& spec);

}  // namespace sbsp

#endif  // SBSP_INSTANCE_H_
