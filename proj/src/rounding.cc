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

#include "sbsp/rounding.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "sbsp/errors.h"

namespace sbsp {
namespace {

constexpr double kMassTol = 1e-6;
constexpr double kSspMarginalTol = 1e-9;

void CheckMarginals(const Instance& inst, const FractionalSchedule& frac) {
  if (frac.s.size() != inst.schools.size() ||
      frac.x.size() != inst.schools.size()) {
    throw ParameterError("fractional schedule has " +
                         std::to_string(frac.s.size()) + " schools, instance " +
                         std::to_string(inst.schools.size()));
  }
  for (size_t n = 0; n < inst.schools.size(); ++n) {
    const size_t routes = inst.schools[n].route_lengths.size();
    if (frac.s[n].size() != routes || frac.x[n].size() != routes) {
      throw ParameterError("school " + std::to_string(n) +
                           ": route count mismatch in fractional schedule");
    }
    for (size_t i = 0; i < routes; ++i) {
      const auto& x = frac.x[n][i];
      if (static_cast<int>(x.size()) != inst.num_slots ||
          static_cast<int>(frac.s[n][i].size()) != inst.num_slots) {
        throw ParameterError("school " + std::to_string(n) + " route " +
                             std::to_string(i) + ": expected " +
                             std::to_string(inst.num_slots) + " slots");
      }
      double mass = 0.0;
      for (double v : x) {
        if (v < -kClampTol) {
          throw ParameterError("school " + std::to_string(n) + " route " +
                               std::to_string(i) + ": negative marginal");
        }
        mass += v;
      }
      if (std::abs(mass - 1.0) > kMassTol) {
        throw ParameterError("school " + std::to_string(n) + " route " +
                             std::to_string(i) + ": marginal sums to " +
                             std::to_string(mass));
      }
    }
  }
}

void Score(const Instance& inst, RoundingResult& result) {
  result.z_paper = MaxLoad(inst, result.schedule, HorizonMode::kPaper);
  result.z_extended = MaxLoad(inst, result.schedule, HorizonMode::kExtended);
}

}  // namespace

int InvertCdf(std::span<const double> cdf, double gamma, bool* drift) {
  for (size_t m = 0; m < cdf.size(); ++m) {
    if (cdf[m] >= gamma) return static_cast<int>(m) + 1;
  }
  if (drift) *drift = true;
  return static_cast<int>(cdf.size());
}

RoundingResult RoundSsp(const Instance& inst, const FractionalSchedule& frac,
                        Rng& rng) {
  CheckMarginals(inst, frac);
  RoundingResult result;
  result.schedule.starts.resize(inst.schools.size());
  for (size_t n = 0; n < inst.schools.size(); ++n) {
    const auto& routes = frac.x[n];
    for (size_t i = 1; i < routes.size(); ++i) {
      for (int m = 0; m < inst.num_slots; ++m) {
        if (std::abs(routes[i][m] - routes[0][m]) > kSspMarginalTol) {
          throw ParameterError("school " + std::to_string(n) +
                               ": routes have different marginals");
        }
      }
    }
    const double gamma = rng.Uniform01();
    result.gammas.push_back(gamma);
    const int slot = InvertCdf(frac.s[n][0], gamma, &result.drift_warning);
    result.schedule.starts[n].assign(routes.size(), slot);
  }
  Score(inst, result);
  return result;
}

RoundingResult RoundSbsp(const Instance& inst, const FractionalSchedule& frac,
                         Rng& rng) {
  CheckMarginals(inst, frac);
  RoundingResult result;
  result.schedule.starts.resize(inst.schools.size());
  for (size_t n = 0; n < inst.schools.size(); ++n) {
    const double gamma = rng.Uniform01();
    result.gammas.push_back(gamma);
    for (const auto& cdf : frac.s[n]) {
      result.schedule.starts[n].push_back(
          InvertCdf(cdf, gamma, &result.drift_warning));
    }
  }
  Score(inst, result);
  return result;
}

BestOfKResult BestOfK(const Instance& inst, const FractionalSchedule& frac,
                      int trials, uint64_t seed, RoundingScheme scheme,
                      int threads) {
  if (trials < 1) throw ParameterError("trials must be >= 1");
  CheckMarginals(inst, frac);
  std::vector<RoundingResult> results(trials);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int k = next++; k < trials; k = next++) {
      Rng rng(StreamSeed(seed, static_cast<uint64_t>(k)));
      results[k] = scheme == RoundingScheme::kSbsp
                       ? RoundSbsp(inst, frac, rng)
                       : RoundSsp(inst, frac, rng);
      results[k].trial_index = k;
    }
  };
  threads = std::clamp(threads, 1, trials);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  const double z_rand = ErrorBound(std::max(frac.objective, 0.0),
                                   DerivedStats(inst).gamma_max,
                                   inst.num_slots)
                            .z_rand;
  BestOfKResult out;
  TrialSummary& s = out.summary;
  s.trials = trials;
  s.z_rand = z_rand;
  s.min = results[0].z_paper;
  s.max = results[0].z_paper;
  int best = 0, within = 0;
  double total = 0.0;
  for (int k = 0; k < trials; ++k) {
    const int z = results[k].z_paper;
    total += z;
    if (z < results[best].z_paper) best = k;
    s.min = std::min(s.min, z);
    s.max = std::max(s.max, z);
    if (z <= z_rand) ++within;
    if (results[k].drift_warning) ++s.drift_warnings;
  }
  s.mean = total / trials;
  s.fraction_within_z_rand = static_cast<double>(within) / trials;
  out.best = std::move(results[best]);
  return out;
}

int RepeatsFor(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw ParameterError("eps must lie in (0, 1)");
  }
  // Guard against ln(1/eps)/ln 2 landing a hair above an integer.
  const double k = std::log(1.0 / eps) / std::log(2.0);
  return static_cast<int>(std::ceil(k - 1e-12));
}

BoundReport ErrorBound(double z_lp, int gamma_max, int num_slots) {
  if (z_lp < 0.0 || gamma_max < 1 || num_slots < 1) {
    throw ParameterError(
        "error bound needs z_lp >= 0, gamma_max >= 1, M >= 1");
  }
  BoundReport report;
  report.z_lp = z_lp;
  report.gamma_max = gamma_max;
  report.num_slots = num_slots;
  const double log2m = std::log(2.0 * num_slots);
  report.z_rand = z_lp + std::sqrt(2.0 * gamma_max * log2m * z_lp) +
                  gamma_max * log2m;
  report.lambda_star = LambdaStar(z_lp, gamma_max, num_slots);
  for (double eps : {0.1, 0.01, 0.001}) {
    report.repeats.emplace_back(eps, RepeatsFor(eps));
  }
  return report;
}

double ChernoffTail(double mu, double lambda, double t) {
  if (!(lambda > 0.0) || !(t > 0.0)) {
    throw ParameterError("Chernoff tail needs lambda > 0 and T > 0");
  }
  if (mu < 0.0) throw ParameterError("Chernoff tail needs mu >= 0");
  return std::exp(-lambda * lambda / ((2.0 * mu + lambda) * t));
}

double LambdaStar(double z_lp, int gamma_max, int num_slots) {
  if (z_lp < 0.0 || gamma_max < 1 || num_slots < 1) {
    throw ParameterError("lambda* needs z_lp >= 0, gamma_max >= 1, M >= 1");
  }
  const double gl = gamma_max * std::log(2.0 * num_slots);
  return (gl + std::sqrt(gl * gl + 8.0 * z_lp * gl)) / 2.0;
}

}  // namespace sbsp
