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

#include "triadic/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace triadic {

Urn::Urn(std::size_t num_participants, std::size_t balls_per_participant)
    : counts_(num_participants, balls_per_participant) {
  if (balls_per_participant == 0) throw std::invalid_argument("Urn: need k >= 1");
  labels_.reserve(num_participants * balls_per_participant);
  for (ParticipantId id = 0; id < num_participants; ++id) {
    labels_.insert(labels_.end(), balls_per_participant, id);
  }
  distinct_ = num_participants;
}

Urn::Urn(std::size_t num_participants, std::vector<ParticipantId> labels)
    : labels_(std::move(labels)), counts_(num_participants, 0) {
  for (auto label : labels_) {
    if (label >= num_participants) throw std::invalid_argument("Urn: label out of range");
    if (counts_[label]++ == 0) ++distinct_;
  }
}

void Urn::relabel(std::size_t ball, ParticipantId label) {
  ParticipantId& slot = labels_.at(ball);
  if (slot == label) return;
  if (--counts_[slot] == 0) --distinct_;
  if (counts_.at(label)++ == 0) ++distinct_;
  slot = label;
}

void Urn::remove(std::span<const std::size_t> balls) {
  std::vector<std::size_t> order(balls.begin(), balls.end());
  std::sort(order.begin(), order.end(), std::greater<>());
  if (std::adjacent_find(order.begin(), order.end()) != order.end()) {
    throw std::invalid_argument("Urn::remove: repeated ball");
  }
  // Largest index first, so swapping in the last ball never moves one that
  // is still to be removed.
  for (auto b : order) {
    if (b >= labels_.size()) throw std::out_of_range("Urn::remove: ball not live");
    if (--counts_[labels_[b]] == 0) --distinct_;
    labels_[b] = labels_.back();
    labels_.pop_back();
  }
}

std::optional<ParticipantId> TriadDraw::majority_label() const {
  if (labels[0] == labels[1] || labels[0] == labels[2]) return labels[0];
  if (labels[1] == labels[2]) return labels[1];
  return std::nullopt;
}

std::vector<std::size_t> TriadDraw::distinct_balls() const {
  std::vector<std::size_t> out(balls.begin(), balls.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TriadDraw make_draw(const Urn& urn, std::array<std::size_t, 3> balls) {
  TriadDraw draw{balls, {}};
  for (std::size_t i = 0; i < 3; ++i) {
    if (balls[i] >= urn.size()) throw std::out_of_range("make_draw: ball not live");
    draw.labels[i] = urn.label(balls[i]);
  }
  return draw;
}

TriadDraw draw_triad(const Urn& urn, Rng& rng) {
  if (urn.empty()) throw std::invalid_argument("draw_triad: empty urn");
  const std::size_t n = urn.size();
  return make_draw(urn, {uniform_index(rng, n), uniform_index(rng, n), uniform_index(rng, n)});
}

std::string to_string(Mechanism mechanism) {
  return mechanism == Mechanism::kRemove ? "remove" : "repeat";
}

Mechanism parse_mechanism(std::string_view name) {
  if (name == "remove") return Mechanism::kRemove;
  if (name == "repeat" || name == "repeat-then-remove") return Mechanism::kRepeatThenRemove;
  throw std::invalid_argument("unknown mechanism '" + std::string(name) + "' (remove|repeat)");
}

VoteResult triadic_vote(const Population& pop, const Urn& urn, const TriadDraw& draw,
                        const StrategyProfile& profile, int round,
                        const std::array<std::optional<ParticipantId>, 3>& first_round) {
  VoteResult result;
  if (auto majority = draw.majority_label()) {
    result.outcome = TriadOutcome::win(*majority);
    return result;
  }
  std::array<int, 3> tally{};
  for (std::size_t v = 0; v < 3; ++v) {
    const VoteContext ctx{pop, urn, draw, draw.labels[v], round, first_round[v]};
    const ParticipantId choice = decide_vote(profile.of(draw.labels[v]), ctx);
    result.votes[v] = choice;
    for (std::size_t c = 0; c < 3; ++c) tally[c] += draw.labels[c] == choice;
  }
  result.comparisons = 3;
  for (std::size_t c = 0; c < 3; ++c) {
    if (tally[c] >= 2) {
      result.outcome = TriadOutcome::win(draw.labels[c]);
      return result;
    }
  }
  result.outcome = TriadOutcome::three_way_tie();
  return result;
}

std::optional<ParticipantId> StepEvent::winner() const {
  if (removed) return std::nullopt;
  return repeat ? repeat->outcome.winner : first.outcome.winner;
}

namespace {

void credit(const VoteResult& vote, const TriadDraw& draw, std::vector<std::size_t>* comparisons) {
  if (comparisons == nullptr || comparisons->empty() || vote.comparisons == 0) return;
  for (auto label : draw.labels) ++(*comparisons)[label];
}

void relabel_all(Urn& urn, const TriadDraw& draw, ParticipantId winner) {
  for (auto b : draw.distinct_balls()) urn.relabel(b, winner);
}

}  // namespace

StepEvent resolve_draw(Urn& urn, const TriadDraw& draw, const Population& pop,
                       Mechanism mechanism, const StrategyProfile& profile,
                       std::vector<std::size_t>* comparisons) {
  StepEvent event{draw, triadic_vote(pop, urn, draw, profile, 1), std::nullopt, false, 0};
  credit(event.first, draw, comparisons);
  event.comparisons = event.first.comparisons;
  if (auto w = event.first.outcome.winner) {
    relabel_all(urn, draw, *w);
    return event;
  }
  if (mechanism == Mechanism::kRepeatThenRemove) {
    event.repeat = triadic_vote(pop, urn, draw, profile, 2, event.first.votes);
    credit(*event.repeat, draw, comparisons);
    event.comparisons += event.repeat->comparisons;
    if (auto w = event.repeat->outcome.winner) {
      relabel_all(urn, draw, *w);
      return event;
    }
  }
  // A split needs three distinct labels, hence three distinct balls.
  urn.remove(draw.balls);
  event.removed = true;
  return event;
}

StepEvent step(Urn& urn, const Population& pop, Mechanism mechanism,
               const StrategyProfile& profile, Rng& rng, std::vector<std::size_t>* comparisons) {
  return resolve_draw(urn, draw_triad(urn, rng), pop, mechanism, profile, comparisons);
}

namespace {

std::string describe(const StepEvent& event) {
  if (event.removed) return "tie:removed";
  if (event.repeat) return "tie:repeat-win:" + std::to_string(*event.repeat->outcome.winner);
  return "win:" + std::to_string(*event.first.outcome.winner);
}

}  // namespace

RunRecord run(const Population& pop, std::size_t k, Mechanism mechanism,
              const StrategyProfile& profile, Rng& rng, const RunOptions& options) {
  if (k < 1) throw std::invalid_argument("run: need k >= 1");
  RunRecord record;
  record.comparisons.assign(pop.size(), 0);

  const bool fallback = !pop.one_dimensional() && profile.uses_quasi_truthful();
  const StrategyProfile effective = fallback ? profile.truthful_fallback() : profile;
  record.strategy_fallback = fallback;

  Urn urn(pop.size(), k);
  std::array<ParticipantId, 3> last_removed{};
  while (urn.distinct_labels() > 1) {
    if (record.steps >= options.max_steps) throw std::runtime_error("run: step limit reached");
    const StepEvent event = step(urn, pop, mechanism, effective, rng, &record.comparisons);
    ++record.steps;
    record.triadic_votes += 1 + (event.repeat ? 1 : 0);
    record.contested_votes += (event.first.comparisons > 0) + (event.repeat ? 1 : 0);
    record.ties += event.first.outcome.is_tie() + (event.repeat && event.repeat->outcome.is_tie());
    record.total_comparisons += event.comparisons;
    if (event.removed) last_removed = event.draw.labels;
    if (options.trace) {
      record.trace.push_back({record.steps, event.draw.balls, event.draw.labels, describe(event)});
    }
  }
  if (urn.empty()) {
    record.urn_emptied = true;
    record.winner = last_removed[uniform_index(rng, 3)];
  } else {
    record.winner = urn.any_label();
  }
  record.final_urn_size = urn.size();
  return record;
}

RunRecord run(const Population& pop, std::size_t k, Mechanism mechanism,
              const StrategyProfile& profile, std::uint64_t seed, const RunOptions& options) {
  Rng rng = rng_stream(seed, 0);
  return run(pop, k, mechanism, profile, rng, options);
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace) {
  os << "step,ball_i,ball_j,ball_k,label_i,label_j,label_k,outcome\n";
  for (const auto& row : trace) {
    os << row.step << ',' << row.balls[0] << ',' << row.balls[1] << ',' << row.balls[2] << ','
       << row.labels[0] << ',' << row.labels[1] << ',' << row.labels[2] << ',' << row.outcome
       << '\n';
  }
}

}  // namespace triadic
