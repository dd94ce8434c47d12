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

#include "triadic/strategies.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <vector>

#include "triadic/oracle.hpp"

namespace triadic {

DecisionPoint make_decision_point(std::array<ParticipantId, 3> triad, int round) {
  std::sort(triad.begin(), triad.end());
  return {triad, round};
}

std::string to_string(BaseStrategy base) {
  switch (base) {
    case BaseStrategy::kTruthful: return "truthful";
    case BaseStrategy::kQuasiTruthfulRemove: return "quasi-remove";
    case BaseStrategy::kQuasiTruthfulRepeat: return "quasi-repeat";
  }
  return "?";
}

BaseStrategy parse_base_strategy(std::string_view name) {
  if (name == "truthful") return BaseStrategy::kTruthful;
  if (name == "quasi-remove") return BaseStrategy::kQuasiTruthfulRemove;
  if (name == "quasi-repeat") return BaseStrategy::kQuasiTruthfulRepeat;
  throw std::invalid_argument("unknown strategy '" + std::string(name) +
                              "' (truthful|quasi-remove|quasi-repeat|deviator:...)");
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

ParticipantId parse_id(std::string_view s) {
  ParticipantId v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("deviator spec: bad participant id '" + std::string(s) + "'");
  }
  return v;
}

bool is_quasi(const StrategyKind& kind) {
  const BaseStrategy base = std::holds_alternative<BaseStrategy>(kind)
                                ? std::get<BaseStrategy>(kind)
                                : std::get<Deviator>(kind).base;
  return base != BaseStrategy::kTruthful;
}

StrategyKind without_quasi(StrategyKind kind) {
  if (auto* dev = std::get_if<Deviator>(&kind)) {
    dev->base = BaseStrategy::kTruthful;
    return kind;
  }
  return BaseStrategy::kTruthful;
}

}  // namespace

StrategyProfile StrategyProfile::parse(std::string_view spec) {
  constexpr std::string_view kDeviator = "deviator:";
  if (!spec.starts_with(kDeviator)) return StrategyProfile(parse_base_strategy(spec));

  const auto parts = split(spec.substr(kDeviator.size()), ':');
  if (parts.size() != 3) {
    throw std::invalid_argument(
        "deviator spec: expected deviator:<voter>:<base>:<a>-<b>-<c>[@round]=<target>[;...]");
  }
  const ParticipantId voter = parse_id(parts[0]);
  Deviator dev{parse_base_strategy(parts[1]), {}};
  for (auto item : split(parts[2], ';')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("deviator spec: missing '='");
    auto point = item.substr(0, eq);
    int round = 1;
    if (const auto at = point.find('@'); at != std::string_view::npos) {
      round = static_cast<int>(parse_id(point.substr(at + 1)));
      point = point.substr(0, at);
      if (round != 1 && round != 2) throw std::invalid_argument("deviator spec: round is 1 or 2");
    }
    const auto ids = split(point, '-');
    if (ids.size() != 3) throw std::invalid_argument("deviator spec: triad needs three ids");
    const auto dp = make_decision_point({parse_id(ids[0]), parse_id(ids[1]), parse_id(ids[2])}, round);
    const ParticipantId target = parse_id(item.substr(eq + 1));
    if (target == voter || std::find(dp.triad.begin(), dp.triad.end(), target) == dp.triad.end() ||
        std::find(dp.triad.begin(), dp.triad.end(), voter) == dp.triad.end()) {
      throw std::invalid_argument("deviator spec: voter and target must be distinct triad members");
    }
    dev.overrides[dp] = target;
  }
  StrategyProfile profile(dev.base);
  profile.assign(voter, std::move(dev));
  return profile;
}

const StrategyKind& StrategyProfile::of(ParticipantId id) const {
  if (auto it = assigned_.find(id); it != assigned_.end()) return it->second;
  return default_;
}

bool StrategyProfile::uses_quasi_truthful() const {
  if (is_quasi(default_)) return true;
  return std::any_of(assigned_.begin(), assigned_.end(),
                     [](const auto& kv) { return is_quasi(kv.second); });
}

StrategyProfile StrategyProfile::truthful_fallback() const {
  StrategyProfile out(without_quasi(default_));
  for (const auto& [id, kind] : assigned_) out.assign(id, without_quasi(kind));
  return out;
}

std::array<ParticipantId, 2> candidates_for(ParticipantId voter,
                                            const std::array<ParticipantId, 3>& triad) {
  const bool distinct = triad[0] != triad[1] && triad[0] != triad[2] && triad[1] != triad[2];
  std::array<ParticipantId, 2> out{};
  std::size_t k = 0;
  for (auto id : triad) {
    if (id != voter && k < 2) out[k++] = id;
  }
  if (!distinct || k != 2 || std::find(triad.begin(), triad.end(), voter) == triad.end()) {
    throw std::invalid_argument("candidates_for: voter must be one of three distinct labels");
  }
  return out;
}

ParticipantId truthful_winner(const std::array<ParticipantId, 3>& triad, const Population& pop) {
  std::array<int, 3> votes{};
  for (std::size_t v = 0; v < 3; ++v) {
    const auto [y, z] = candidates_for(triad[v], triad);
    const ParticipantId choice = prefer(pop[triad[v]], pop[y], pop[z]).id;
    for (std::size_t c = 0; c < 3; ++c) votes[c] += triad[c] == choice;
  }
  const auto best = std::max_element(votes.begin(), votes.end()) - votes.begin();
  return triad[static_cast<std::size_t>(best)];
}

bool thinks_should_win(ParticipantId voter, const std::array<ParticipantId, 3>& triad,
                       const Population& pop) {
  return truthful_winner(triad, pop) == voter;
}

double expected_utility(std::span<const double> sorted_positions, const Participant& x) {
  if (sorted_positions.empty()) throw std::invalid_argument("expected_utility: empty urn");
  if (x.dimension() != 1) throw std::domain_error("expected_utility: one-dimensional only");
  const auto pmf = binomial_half_pmf(sorted_positions.size() - 1);
  const double at = x.point(0);
  double total = 0.0;
  for (std::size_t i = 0; i < sorted_positions.size(); ++i) {
    total += pmf[i] * x.utility(std::abs(sorted_positions[i] - at));
  }
  return total;
}

double expected_utility(std::span<const std::size_t> counts, const Participant& x,
                        const Population& pop) {
  if (!pop.one_dimensional()) throw std::domain_error("expected_utility: one-dimensional only");
  std::size_t balls = 0;
  for (auto c : counts) balls += c;
  if (balls == 0) throw std::invalid_argument("expected_utility: empty urn");
  const auto pmf = binomial_half_pmf(balls - 1);
  // Participant ids are already in axis order, so the sorted ball sequence is
  // label 0's balls, then label 1's, and so on.
  double total = 0.0;
  std::size_t index = 0;
  for (ParticipantId label = 0; label < counts.size(); ++label) {
    if (counts[label] == 0) continue;
    double mass = 0.0;
    for (std::size_t b = 0; b < counts[label]; ++b) mass += pmf[index++];
    total += mass * utility_of(x, pop[label]);
  }
  return total;
}

double expected_utility(const Urn& urn, const Participant& x, const Population& pop) {
  return expected_utility(urn.counts(), x, pop);
}

double lottery_utility(std::span<const ParticipantId> removed, const Participant& x,
                       const Population& pop) {
  if (removed.empty()) throw std::invalid_argument("lottery_utility: nothing removed");
  double total = 0.0;
  for (auto label : removed) total += utility_of(x, pop[label]);
  return total / static_cast<double>(removed.size());
}

double win_vs_tie_gain(ParticipantId winner, ParticipantId candidate, const TriadDraw& draw,
                       const Urn& urn, const Population& pop) {
  if (!draw.distinct_labels()) throw std::invalid_argument("win_vs_tie_gain: labels must be distinct");
  std::vector<std::size_t> relabelled(urn.counts().begin(), urn.counts().end());
  std::vector<std::size_t> removed = relabelled;
  for (auto label : draw.labels) {
    --relabelled[label];
    --removed[label];
  }
  relabelled[winner] += 3;
  const Participant& x = pop[candidate];
  const double on_win = expected_utility(relabelled, x, pop);
  const double on_tie = urn.size() == 3 ? lottery_utility(draw.labels, x, pop)
                                        : expected_utility(removed, x, pop);
  return on_win - on_tie;
}

bool prefers_win_over_tie(ParticipantId winner, ParticipantId candidate, const TriadDraw& draw,
                          const Urn& urn, const Population& pop) {
  return win_vs_tie_gain(winner, candidate, draw, urn, pop) >= -kUtilityTolerance;
}

namespace {

ParticipantId truthful_vote(const VoteContext& ctx) {
  const auto [y, z] = candidates_for(ctx.voter, ctx.draw.labels);
  const auto& pop = ctx.population;
  return prefer(pop[ctx.voter], pop[y], pop[z]).id;
}

ParticipantId base_vote(BaseStrategy base, const VoteContext& ctx) {
  if (base == BaseStrategy::kTruthful || !ctx.population.one_dimensional() ||
      !thinks_should_win(ctx.voter, ctx.draw.labels, ctx.population)) {
    return truthful_vote(ctx);
  }
  const auto [y, z] = candidates_for(ctx.voter, ctx.draw.labels);
  if (base == BaseStrategy::kQuasiTruthfulRepeat) {
    if (ctx.round == 1 || !ctx.first_round_vote) return truthful_vote(ctx);
    return *ctx.first_round_vote == y ? z : y;
  }
  // Remove mechanism: back the side who would rather see us win than see the
  // triad thrown out; that side then has no reason to force a tie.
  const double gain_y = win_vs_tie_gain(ctx.voter, y, ctx.draw, ctx.urn, ctx.population);
  const double gain_z = win_vs_tie_gain(ctx.voter, z, ctx.draw, ctx.urn, ctx.population);
  const bool y_ok = gain_y >= -kUtilityTolerance;
  const bool z_ok = gain_z >= -kUtilityTolerance;
  if (y_ok && z_ok) return std::min(y, z);
  if (y_ok) return y;
  if (z_ok) return z;
  return gain_y >= gain_z ? y : z;
}

}  // namespace

ParticipantId decide_vote(const StrategyKind& kind, const VoteContext& ctx) {
  if (const auto* dev = std::get_if<Deviator>(&kind)) {
    const auto it = dev->overrides.find(make_decision_point(ctx.draw.labels, ctx.round));
    if (it != dev->overrides.end()) {
      const auto cands = candidates_for(ctx.voter, ctx.draw.labels);
      if (it->second != cands[0] && it->second != cands[1]) {
        throw std::invalid_argument("deviator: forced vote is not a candidate");
      }
      return it->second;
    }
    return base_vote(dev->base, ctx);
  }
  return base_vote(std::get<BaseStrategy>(kind), ctx);
}

}  // namespace triadic
