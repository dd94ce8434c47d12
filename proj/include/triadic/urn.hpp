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

#ifndef TRIADIC_URN_HPP_
#define TRIADIC_URN_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "triadic/model.hpp"
#include "triadic/rng.hpp"

namespace triadic {

struct Ball {
  std::size_t physical_index = 0;
  ParticipantId label = 0;
};

// Multiset of labelled balls. Live balls occupy physical indices
// 0..size()-1; removal compacts by moving the last ball into the hole.
class Urn {
 public:
  // k balls for each of num_participants labels.
  Urn(std::size_t num_participants, std::size_t balls_per_participant);
  Urn(std::size_t num_participants, std::vector<ParticipantId> labels);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  std::size_t num_participants() const { return counts_.size(); }
  std::size_t distinct_labels() const { return distinct_; }

  ParticipantId label(std::size_t ball) const { return labels_[ball]; }
  Ball ball(std::size_t ball) const { return {ball, labels_[ball]}; }
  std::size_t count(ParticipantId label) const { return counts_[label]; }
  std::span<const ParticipantId> labels() const { return labels_; }
  std::span<const std::size_t> counts() const { return counts_; }

  // Any live label; the winner once distinct_labels() == 1.
  ParticipantId any_label() const { return labels_.front(); }

  void relabel(std::size_t ball, ParticipantId label);
  // Physical indices must be distinct and live.
  void remove(std::span<const std::size_t> balls);

 private:
  std::vector<ParticipantId> labels_;
  std::vector<std::size_t> counts_;
  std::size_t distinct_ = 0;
};

// Three physical balls drawn i.i.d. uniformly (with replacement).
struct TriadDraw {
  std::array<std::size_t, 3> balls{};
  std::array<ParticipantId, 3> labels{};

  bool distinct_labels() const {
    return labels[0] != labels[1] && labels[0] != labels[2] && labels[1] != labels[2];
  }
  // The label held by at least two of the three balls, if any.
  std::optional<ParticipantId> majority_label() const;
  // Distinct physical balls in ascending order.
  std::vector<std::size_t> distinct_balls() const;
};

TriadDraw draw_triad(const Urn& urn, Rng& rng);
TriadDraw make_draw(const Urn& urn, std::array<std::size_t, 3> balls);

// Result of one TriadicVote: a winning label, or a 1-1-1 split.
struct TriadOutcome {
  std::optional<ParticipantId> winner;

  static TriadOutcome win(ParticipantId w) { return {w}; }
  static TriadOutcome three_way_tie() { return {}; }
  bool is_tie() const { return !winner.has_value(); }
  bool operator==(const TriadOutcome&) const = default;
};

}  // namespace triadic

#endif  // TRIADIC_URN_HPP_
