// Copyright 2026 The triadic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Comparison protocols that read the axis directly (extreme removal and
// extreme contraction), the two-candidate/one-voter protocol, and one-step
// winner densities on uniform populations.

#ifndef TRIADIC_BASELINES_HPP_
#define TRIADIC_BASELINES_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "triadic/model.hpp"
#include "triadic/oracle.hpp"
#include "triadic/rng.hpp"

namespace triadic {

enum class BaselineKind { kRemoveRandomExtreme, kContractExtremes, kHotOrNot };

std::string to_string(BaselineKind kind);
BaselineKind parse_baseline_kind(const std::string& name);

// One ball per participant; a fair coin picks the left or right extreme ball
// and throws it out. 1-D only.
ParticipantId remove_random_extreme(const Population& pop, Rng& rng);

// One ball per participant; a uniformly sampled ball pulls both extreme balls
// onto its position. Returns the lowest id at the final common position. 1-D
// only.
ParticipantId contract_extremes(const Population& pop, Rng& rng);

// Two candidate balls and one voter ball, all distinct; both candidates take
// the label the voter prefers. With two balls left the voter is one of them.
ParticipantId hotornot_run(const Population& pop, Rng& rng);

ParticipantId run_baseline(BaselineKind kind, const Population& pop, Rng& rng);

// Exact winner laws over n distinct sorted positions, by enumerating every
// random choice. ContractExtremes can revisit states, so its law comes from
// an exact solve of the absorbing chain.
std::vector<Rational> remove_random_extreme_law(std::size_t n);
std::vector<Rational> contract_extremes_law(std::size_t n);

// Uniform-bin histogram on [0,1], stored as a density.
struct Histogram {
  std::vector<double> density;
  std::size_t samples = 0;

  std::size_t bins() const { return density.size(); }
  double width() const { return 1.0 / static_cast<double>(density.size()); }
  double mass() const;
};

// Position of the next winner after one contested step on a fresh
// uniform[0,1] population of n participants, repeated `reps` times.
// kTriadic: three distinct participants vote truthfully. kHotOrNot: two
// candidates and a distinct voter. kUniform: a uniformly chosen participant.
Histogram one_step_winner_density(DensityKind kind, std::size_t n, std::size_t reps,
                                  std::size_t bins, std::uint64_t seed);

// L1 distance between the histogram and density(kind, .), comparing each bin
// with the exact mean density over that bin.
double l1_distance(const Histogram& hist, DensityKind kind);

double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace triadic

#endif  // TRIADIC_BASELINES_HPP_
