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

#ifndef TRIADIC_STRATEGIES_HPP_
#define TRIADIC_STRATEGIES_HPP_

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "triadic/model.hpp"
#include "triadic/urn.hpp"

namespace triadic {

// Absolute slack on utility comparisons; exact-boundary configurations
// (symmetric triads) land within it.
inline constexpr double kUtilityTolerance = 1e-9;

enum class BaseStrategy {
  kTruthful,
  kQuasiTruthfulRemove,
  kQuasiTruthfulRepeat,
};

// Identifies one vote a participant may be asked to cast: the triad (ids in
// ascending order) and the round within it.
struct DecisionPoint {
  std::array<ParticipantId, 3> triad{};
  int round = 1;

  auto operator<=>(const DecisionPoint&) const = default;
};

DecisionPoint make_decision_point(std::array<ParticipantId, 3> triad, int round);

// A base strategy with explicit forced votes at chosen decision points.
struct Deviator {
  BaseStrategy base = BaseStrategy::kTruthful;
  std::map<DecisionPoint, ParticipantId> overrides;
};

using StrategyKind = std::variant<BaseStrategy, Deviator>;

std::string to_string(BaseStrategy base);
BaseStrategy parse_base_strategy(std::string_view name);

// Strategy per participant: one default plus individual assignments.
class StrategyProfile {
 public:
  explicit StrategyProfile(StrategyKind all = BaseStrategy::kTruthful)
      : default_(std::move(all)) {}

  // `truthful`, `quasi-remove`, `quasi-repeat`, or
  // `deviator:<voter>:<base>:<a>-<b>-<c>[@<round>]=<target>[;...]`, where the
  // named voter deviates and everyone else plays <base>.
  static StrategyProfile parse(std::string_view spec);

  void assign(ParticipantId id, StrategyKind kind) { assigned_[id] = std::move(kind); }
  const StrategyKind& of(ParticipantId id) const;

  bool uses_quasi_truthful() const;
  // Same profile with every quasi-truthful base replaced by truthful.
  StrategyProfile truthful_fallback() const;

 private:
  StrategyKind default_;
  std::map<ParticipantId, StrategyKind> assigned_;
};

// Everything a voter may look at when casting one vote (complete information).
struct VoteContext {
  const Population& population;
  const Urn& urn;
  const TriadDraw& draw;
  ParticipantId voter = 0;
  int round = 1;
  std::optional<ParticipantId> first_round_vote;
};

// The two labels of `triad` other than `voter`.
std::array<ParticipantId, 2> candidates_for(ParticipantId voter,
                                            const std::array<ParticipantId, 3>& triad);

// Two-vote winner of an all-truthful vote among three distinct participants.
// A truthful three-way split cannot happen, so this always exists.
ParticipantId truthful_winner(const std::array<ParticipantId, 3>& triad, const Population& pop);

bool thinks_should_win(ParticipantId voter, const std::array<ParticipantId, 3>& triad,
                       const Population& pop);

// Expected utility for x when quasi-truthful play continues from an urn whose
// balls sit at `sorted_positions` (ascending). The i-th of n balls wins with
// probability C(n-1, i) / 2^(n-1).
double expected_utility(std::span<const double> sorted_positions, const Participant& x);
// Same, for label counts over a sorted 1-D population. Throws on an empty urn
// or a population that is not one-dimensional.
double expected_utility(std::span<const std::size_t> counts, const Participant& x,
                        const Population& pop);
double expected_utility(const Urn& urn, const Participant& x, const Population& pop);

// Expected utility of the uniform draw among the labels of the last removed
// balls: what an emptied urn pays out.
double lottery_utility(std::span<const ParticipantId> removed, const Participant& x,
                       const Population& pop);

// U(win for `winner`) - U(three-way tie) for `candidate`, both under
// quasi-truthful continuation: P relabels the drawn balls to `winner`, Q
// removes them (an empty Q pays the last-removed lottery).
double win_vs_tie_gain(ParticipantId winner, ParticipantId candidate, const TriadDraw& draw,
                       const Urn& urn, const Population& pop);

bool prefers_win_over_tie(ParticipantId winner, ParticipantId candidate, const TriadDraw& draw,
                          const Urn& urn, const Population& pop);

// The candidate `ctx.voter` votes for. Quasi-truthful kinds play truthfully in
// two dimensions.
ParticipantId decide_vote(const StrategyKind& kind, const VoteContext& ctx);

}  // namespace triadic

#endif  // TRIADIC_STRATEGIES_HPP_
