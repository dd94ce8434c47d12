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

// The urn protocol. Each step draws three balls; a repeated label wins
// outright, otherwise the three participants vote among themselves and the
// drawn balls are relabelled to the winner. A 1-1-1 split is handled by the
// configured mechanism.

#ifndef TRIADIC_ENGINE_HPP_
#define TRIADIC_ENGINE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "triadic/model.hpp"
#include "triadic/rng.hpp"
#include "triadic/strategies.hpp"
#include "triadic/urn.hpp"

namespace triadic {

enum class Mechanism {
  kRemove,            // drop the three drawn balls
  kRepeatThenRemove,  // vote once more; a second split drops them
};

std::string to_string(Mechanism mechanism);
// "remove" or "repeat".
Mechanism parse_mechanism(std::string_view name);

struct VoteResult {
  TriadOutcome outcome;
  // votes[i] is the choice of the participant holding draw.labels[i]; only
  // set when the labels are distinct.
  std::array<std::optional<ParticipantId>, 3> votes;
  std::size_t comparisons = 0;
};

// One TriadicVote on `draw`. `first_round` carries each voter's round-1 vote
// when round == 2.
VoteResult triadic_vote(const Population& pop, const Urn& urn, const TriadDraw& draw,
                        const StrategyProfile& profile, int round = 1,
                        const std::array<std::optional<ParticipantId>, 3>& first_round = {});

struct StepEvent {
  TriadDraw draw;
  VoteResult first;
  std::optional<VoteResult> repeat;  // second round under RepeatThenRemove
  bool removed = false;
  std::size_t comparisons = 0;

  // Final outcome of the step: the winning label, or nothing when removed.
  std::optional<ParticipantId> winner() const;
};

// Applies the outcome of a given draw to `urn`. Comparisons are credited to
// `comparisons[label]` when the vector is non-empty.
StepEvent resolve_draw(Urn& urn, const TriadDraw& draw, const Population& pop,
                       Mechanism mechanism, const StrategyProfile& profile,
                       std::vector<std::size_t>* comparisons = nullptr);

StepEvent step(Urn& urn, const Population& pop, Mechanism mechanism,
               const StrategyProfile& profile, Rng& rng,
               std::vector<std::size_t>* comparisons = nullptr);

struct RunOptions {
  bool trace = false;
  // Safety valve; a run that hits it throws.
  std::uint64_t max_steps = 1ULL << 40;
};

struct TraceRow {
  std::uint64_t step = 0;
  std::array<std::size_t, 3> balls{};
  std::array<ParticipantId, 3> labels{};
  std::string outcome;  // win:<id>, tie:removed, tie:repeat-win:<id>
};

struct RunRecord {
  ParticipantId winner = 0;
  std::vector<std::size_t> comparisons;  // per participant
  std::size_t total_comparisons = 0;
  std::uint64_t triadic_votes = 0;       // every draw, majority or contested
  std::uint64_t contested_votes = 0;     // distinct-label votes, both rounds
  std::uint64_t ties = 0;                // ThreeWayTie outcomes, both rounds
  std::uint64_t steps = 0;
  std::size_t final_urn_size = 0;
  bool urn_emptied = false;
  bool strategy_fallback = false;  // quasi-truthful requested in 2-D
  std::vector<TraceRow> trace;

  double votes_per_voter() const {
    return comparisons.empty() ? 0.0
                               : static_cast<double>(total_comparisons) /
                                     static_cast<double>(comparisons.size());
  }
};

RunRecord run(const Population& pop, std::size_t k, Mechanism mechanism,
              const StrategyProfile& profile, Rng& rng, const RunOptions& options = {});
RunRecord run(const Population& pop, std::size_t k, Mechanism mechanism,
              const StrategyProfile& profile, std::uint64_t seed, const RunOptions& options = {});

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace);

}  // namespace triadic

#endif  // TRIADIC_ENGINE_HPP_
