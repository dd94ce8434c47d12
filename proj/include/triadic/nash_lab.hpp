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

// Equilibrium checks for the quasi-truthful profiles in one dimension. All
// continuation values use the binomial winner law of the post-step urn, or
// the last-removed lottery when the urn empties.

#ifndef TRIADIC_NASH_LAB_HPP_
#define TRIADIC_NASH_LAB_HPP_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "triadic/engine.hpp"
#include "triadic/model.hpp"
#include "triadic/strategies.hpp"
#include "triadic/urn.hpp"

namespace triadic {

// Isolated: the triad is the whole urn, so a split empties it. Embedded: each
// member holds a second ball, so a split leaves a live urn behind.
enum class Regime { kIsolated, kEmbedded };

std::string to_string(Regime regime);

struct DeviationReport {
  ParticipantId deviator = 0;
  std::string decision;        // triad and round(s) the deviator controls
  double prescribed = 0.0;     // expected utility under the quasi-truthful profile
  double best_deviation = 0.0; // best over every other pure vote plan
  double delta = 0.0;          // best_deviation - prescribed
  std::string regime;

  bool profitable() const { return delta > kUtilityTolerance; }
};

// Quasi-truthful profile matching the mechanism.
StrategyProfile prescribed_profile(Mechanism mechanism);

// Utility for x of the urn after a step: binomial law, or the lottery over
// `removed` when the urn is empty.
double continuation_utility(const Urn& after, const std::array<ParticipantId, 3>& removed,
                            const Participant& x, const Population& pop);

// Every pure vote plan of `deviator` (one vote per round it can reach) against
// the prescribed play of the other two.
DeviationReport one_shot_deviation_check(const Population& pop, const Urn& urn,
                                         const TriadDraw& draw, ParticipantId deviator,
                                         Mechanism mechanism);

// Full game of a single contested vote among three participants. Fewer than
// three positions give an empty report; more is an error.
std::vector<DeviationReport> enumerate_n3(std::span<const double> positions,
                                          std::span<const UtilityShape> utilities,
                                          Mechanism mechanism, Regime regime);

struct ExistenceScanRow {
  std::size_t config_id = 0;
  std::array<ParticipantId, 3> triad{};
  ParticipantId deviator = 0;  // side participant, or a one-shot deviator
  double delta = 0.0;
  std::string verdict;  // qualifies, fails, ok, profitable
};

struct ExistenceScanReport {
  std::size_t configs = 0;
  std::size_t violations = 0;              // neither side prefers the win
  std::size_t profitable_deviations = 0;   // one-shot, both mechanisms
  std::vector<ExistenceScanRow> rows;
};

// Random 1-D configurations with 3..n_max participants, random Linear or
// Power(alpha in [1,3]) utilities, random urns and a random contested triad.
ExistenceScanReport existence_scan(std::size_t n_max, std::size_t trials, std::uint64_t seed,
                                   bool keep_rows = false);

void write_scan_csv(std::ostream& os, const ExistenceScanReport& report);

struct DominancePair {
  std::vector<double> r;  // ascending
  std::vector<double> s;  // ascending
  double x = 0.0;
};

// Index-aligned: s_i <= r_i where r_i < x, s_i = r_i where r_i = x, s_i >= r_i
// where r_i > x.
bool x_dominates(std::span<const double> r, std::span<const double> s, double x);
bool x_dominates(const DominancePair& pair);
bool x_dominates(const Urn& r, const Urn& s, ParticipantId x, const Population& pop);

struct CoupledStepReport {
  std::size_t pairs = 0;        // (R, S, x) with R x-dominating S
  std::size_t coupled_steps = 0;
  std::size_t violations = 0;
};

// For every pair of urns over `pop` with up to max_balls balls where R
// x-dominates S and x holds a ball in R, and every drawn index triple: R
// steps with everyone quasi-truthful, S with x free to vote either way except
// into a split. Checks that R' still x-dominates S'.
CoupledStepReport coupled_step_check(const Population& pop, std::size_t max_balls);

}  // namespace triadic

#endif  // TRIADIC_NASH_LAB_HPP_
