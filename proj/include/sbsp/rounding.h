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

// Randomized rounding of fractional schedules.
//
// SBSP rounding draws one gamma_n ~ U[0, 1) per school and starts route i in
// the first slot m with S_i^(m) >= gamma_n. Because every route of a school
// uses the same gamma_n, the window rows of the fractional solution carry
// over to the rounded starts. SSP rounding samples one common slot per
// school from its marginal. Logarithms below are natural.

#ifndef SBSP_ROUNDING_H_
#define SBSP_ROUNDING_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sbsp/instance.h"
#include "sbsp/lp_model.h"
#include "sbsp/rng.h"
#include "sbsp/schedule.h"

namespace sbsp {

struct RoundingResult {
  StartSchedule schedule;
  int z_paper = 0;
  int z_extended = 0;
  std::vector<double> gammas;  // one per school
  int trial_index = 0;
  bool drift_warning = false;  // some route had no slot with S >= gamma
};

// Throws ParameterError if a marginal is negative or does not sum to one,
// or (SSP) if the routes of a school carry different marginals.
// First slot m (1-based) with cdf[m-1] >= gamma. Returns M and sets *drift
// when no entry reaches gamma.
int InvertCdf(std::span<const double> cdf, double gamma,
              bool* drift = nullptr);

RoundingResult RoundSsp(const Instance& inst, const FractionalSchedule& frac,
                        Rng& rng);
RoundingResult RoundSbsp(const Instance& inst, const FractionalSchedule& frac,
                         Rng& rng);

enum class RoundingScheme { kSbsp, kSsp };

struct TrialSummary {
  int trials = 0;
  int min = 0;
  int max = 0;
  double mean = 0.0;
  double z_rand = 0.0;
  double fraction_within_z_rand = 0.0;  // trials with z_paper <= z_rand
  int drift_warnings = 0;
};

struct BestOfKResult {
  RoundingResult best;
  TrialSummary summary;
};

// K trials, trial k seeded with StreamSeed(seed, k). The best trial
// minimizes z_paper, ties going to the lowest index, so the result does not
// depend on `threads`.
BestOfKResult BestOfK(const Instance& inst, const FractionalSchedule& frac,
                      int trials, uint64_t seed,
                      RoundingScheme scheme = RoundingScheme::kSbsp,
                      int threads = 1);

// Number of independent repeats that lift a success probability of 1/2 to
// 1 - eps: ceil(ln(1/eps) / ln 2).
int RepeatsFor(double eps);

struct BoundReport {
  double z_lp = 0.0;
  int gamma_max = 0;
  int num_slots = 0;
  double z_rand = 0.0;
  double lambda_star = 0.0;
  std::vector<std::pair<double, int>> repeats;  // (eps, RepeatsFor(eps))
};

// z_rand = z + sqrt(2 G ln(2M) z) + G ln(2M).
BoundReport ErrorBound(double z_lp, int gamma_max, int num_slots);

// exp(-lambda^2 / ((2 mu + lambda) T)).
double ChernoffTail(double mu, double lambda, double t);

// Positive root of lambda^2 = (2 z + lambda) G ln(2M), where the tail bound
// with mu = z, T = G equals 1 / (2M).
double LambdaStar(double z_lp, int gamma_max, int num_slots);

}  // namespace sbsp

#endif  // SBSP_ROUNDING_H_
