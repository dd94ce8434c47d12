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

#include "triadic/nash_lab.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "triadic/rng.hpp"

namespace triadic {

std::string to_string(Regime regime) {
  return regime == Regime::kIsolated ? "isolated" : "embedded";
}

StrategyProfile prescribed_profile(Mechanism mechanism) {
  return StrategyProfile(mechanism == Mechanism::kRemove ? BaseStrategy::kQuasiTruthfulRemove
                                                         : BaseStrategy::kQuasiTruthfulRepeat);
}

double continuation_utility(const Urn& after, const std::array<ParticipantId, 3>& removed,
                            const Participant& x, const Population& pop) {
  if (after.empty()) return lottery_utility(removed, x, pop);
  return expected_utility(after, x, pop);
}

namespace {

std::string triad_string(const std::array<ParticipantId, 3>& triad) {
  return std::to_string(triad[0]) + "-" + std::to_string(triad[1]) + "-" + std::to_string(triad[2]);
}

double play(const Population& pop, const Urn& urn, const TriadDraw& draw, Mechanism mechanism,
            const StrategyProfile& profile, ParticipantId who) {
  Urn after = urn;
  resolve_draw(after, draw, pop, mechanism, profile);
  return continuation_utility(after, draw.labels, pop[who], pop);
}

}  // namespace

DeviationReport one_shot_deviation_check(const Population& pop, const Urn& urn,
                                         const TriadDraw& draw, ParticipantId deviator,
                                         Mechanism mechanism) {
  if (!pop.one_dimensional()) throw std::invalid_argument("one_shot_deviation_check: 1-D only");
  if (!draw.distinct_labels()) {
    throw std::invalid_argument("one_shot_deviation_check: needs three distinct labels");
  }
  const auto cands = candidates_for(deviator, draw.labels);
  const StrategyProfile base = prescribed_profile(mechanism);
  const BaseStrategy base_kind = std::get<BaseStrategy>(base.of(deviator));

  DeviationReport report;
  report.deviator = deviator;
  report.prescribed = play(pop, urn, draw, mechanism, base, deviator);

  const auto round1 = make_decision_point(draw.labels, 1);
  const auto round2 = make_decision_point(draw.labels, 2);
  const VoteContext ctx{pop, urn, draw, deviator, 1, std::nullopt};
  const ParticipantId prescribed_first = decide_vote(base.of(deviator), ctx);

  bool any = false;
  const std::size_t second_choices = mechanism == Mechanism::kRepeatThenRemove ? 2 : 1;
  for (ParticipantId v1 : cands) {
    for (std::size_t c2 = 0; c2 < second_choices; ++c2) {
      Deviator dev{base_kind, {{round1, v1}}};
      if (mechanism == Mechanism::kRepeatThenRemove) dev.overrides[round2] = cands[c2];
      // The remove-mechanism plan that repeats the prescribed vote is not a
      // deviation.
      if (mechanism == Mechanism::kRemove && v1 == prescribed_first) continue;
      StrategyProfile profile = base;
      profile.assign(deviator, dev);
      const double value = play(pop, urn, draw, mechanism, profile, deviator);
      if (!any || value > report.best_deviation) report.best_deviation = value;
      any = true;
    }
  }
  report.decision = triad_string(round1.triad) +
                    (mechanism == Mechanism::kRepeatThenRemove ? "@1,2" : "@1");
  report.delta = report.best_deviation - report.prescribed;
  return report;
}

std::vector<DeviationReport> enumerate_n3(std::span<const double> positions,
                                          std::span<const UtilityShape> utilities,
                                          Mechanism mechanism, Regime regime) {
  if (positions.size() != utilities.size()) {
    throw std::invalid_argument("enumerate_n3: one utility per position");
  }
  if (positions.size() < 3) return {};
  if (positions.size() > 3) throw std::invalid_argument("enumerate_n3: at most three participants");

  std::array<std::size_t, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return positions[a] < positions[b]; });
  std::vector<double> xs;
  std::vector<UtilityShape> shapes;
  for (auto i : order) {
    xs.push_back(positions[i]);
    shapes.push_back(utilities[i]);
  }
  if (xs[0] == xs[1] || xs[1] == xs[2]) throw std::invalid_argument("enumerate_n3: positions must be distinct");
  const Population pop = generate_population(LineSpec{xs}).with_utilities(shapes);

  const std::size_t k = regime == Regime::kIsolated ? 1 : 2;
  const Urn urn(3, k);
  const TriadDraw draw = make_draw(urn, {0, k, 2 * k});
  std::vector<DeviationReport> reports;
  for (ParticipantId who = 0; who < 3; ++who) {
    reports.push_back(one_shot_deviation_check(pop, urn, draw, who, mechanism));
    reports.back().regime = to_string(regime);
  }
  return reports;
}

ExistenceScanReport existence_scan(std::size_t n_max, std::size_t trials, std::uint64_t seed,
                                   bool keep_rows) {
  if (n_max < 3) throw std::invalid_argument("existence_scan: need n_max >= 3");
  ExistenceScanReport report;
  for (std::size_t config = 0; config < trials; ++config) {
    Rng rng = rng_stream(seed, config);
    const std::size_t n = 3 + uniform_index(rng, n_max - 2);
    std::vector<double> xs(n);
    for (auto& x : xs) x = 10.0 * uniform_real(rng);
    std::vector<UtilityShape> shapes;
    for (std::size_t i = 0; i < n; ++i) {
      shapes.push_back(uniform_index(rng, 2) == 0 ? UtilityShape::linear()
                                                  : UtilityShape::power(1.0 + 2.0 * uniform_real(rng)));
    }
    const Population pop = generate_population(LineSpec{xs}).with_utilities(shapes);

    std::vector<ParticipantId> ids(n);
    std::iota(ids.begin(), ids.end(), ParticipantId{0});
    std::shuffle(ids.begin(), ids.end(), rng);
    std::array<ParticipantId, 3> triad{ids[0], ids[1], ids[2]};
    std::sort(triad.begin(), triad.end());

    std::vector<ParticipantId> labels;
    for (ParticipantId id = 0; id < n; ++id) {
      std::size_t count = uniform_index(rng, 4);
      if (count == 0 && std::find(triad.begin(), triad.end(), id) != triad.end()) count = 1;
      labels.insert(labels.end(), count, id);
    }
    const Urn urn(n, labels);
    std::array<std::size_t, 3> balls{};
    for (std::size_t t = 0; t < 3; ++t) {
      balls[t] = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), triad[t]) - labels.begin());
    }
    const TriadDraw draw = make_draw(urn, balls);
    ++report.configs;

    const ParticipantId y = truthful_winner(triad, pop);
    const auto sides = candidates_for(y, triad);
    bool qualifies = false;
    for (auto side : sides) {
      const double gain = win_vs_tie_gain(y, side, draw, urn, pop);
      const bool ok = gain >= -kUtilityTolerance;
      qualifies = qualifies || ok;
      if (keep_rows) report.rows.push_back({config, triad, side, gain, ok ? "qualifies" : "fails"});
    }
    if (!qualifies) ++report.violations;

    for (Mechanism mechanism : {Mechanism::kRemove, Mechanism::kRepeatThenRemove}) {
      for (auto who : triad) {
        const auto dev = one_shot_deviation_check(pop, urn, draw, who, mechanism);
        if (dev.profitable()) ++report.profitable_deviations;
        if (keep_rows) {
          report.rows.push_back({config, triad, who, dev.delta, dev.profitable() ? "profitable" : "ok"});
        }
      }
    }
  }
  return report;
}

void write_scan_csv(std::ostream& os, const ExistenceScanReport& report) {
  os << "config_id,triad,deviator,delta,verdict\n";
  os.precision(17);
  for (const auto& row : report.rows) {
    os << row.config_id << ',' << triad_string(row.triad) << ',' << row.deviator << ','
       << row.delta << ',' << row.verdict << '\n';
  }
}

bool x_dominates(std::span<const double> r, std::span<const double> s, double x) {
  if (r.size() != s.size()) throw std::invalid_argument("x_dominates: urns differ in size");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < x && !(s[i] <= r[i])) return false;
    if (r[i] == x && s[i] != r[i]) return false;
    if (r[i] > x && !(s[i] >= r[i])) return false;
  }
  return true;
}

bool x_dominates(const DominancePair& pair) { return x_dominates(pair.r, pair.s, pair.x); }

namespace {

std::vector<double> sorted_positions(const Urn& urn, const Population& pop) {
  std::vector<double> out;
  out.reserve(urn.size());
  for (ParticipantId id = 0; id < urn.num_participants(); ++id) {
    out.insert(out.end(), urn.count(id), pop.coordinate(id));
  }
  return out;
}

// All multisets of `size` labels over n participants, as sorted label lists.
void multisets(std::size_t n, std::size_t size, std::vector<ParticipantId>& cur,
               std::vector<std::vector<ParticipantId>>& out) {
  if (cur.size() == size) {
    out.push_back(cur);
    return;
  }
  for (ParticipantId id = cur.empty() ? 0 : cur.back(); id < n; ++id) {
    cur.push_back(id);
    multisets(n, size, cur, out);
    cur.pop_back();
  }
}

}  // namespace

bool x_dominates(const Urn& r, const Urn& s, ParticipantId x, const Population& pop) {
  if (!pop.one_dimensional()) throw std::invalid_argument("x_dominates: 1-D only");
  return x_dominates(sorted_positions(r, pop), sorted_positions(s, pop), pop.coordinate(x));
}

CoupledStepReport coupled_step_check(const Population& pop, std::size_t max_balls) {
  if (!pop.one_dimensional()) throw std::invalid_argument("coupled_step_check: 1-D only");
  const std::size_t n = pop.size();
  const StrategyProfile quasi = prescribed_profile(Mechanism::kRemove);
  CoupledStepReport report;
  for (std::size_t m = 1; m <= max_balls; ++m) {
    std::vector<std::vector<ParticipantId>> all;
    std::vector<ParticipantId> cur;
    multisets(n, m, cur, all);
    std::vector<Urn> urns;
    std::vector<std::vector<double>> positions;
    for (const auto& labels : all) {
      urns.emplace_back(n, labels);
      positions.push_back(sorted_positions(urns.back(), pop));
    }
    for (ParticipantId x = 0; x < n; ++x) {
      const double at = pop.coordinate(x);
      for (std::size_t ri = 0; ri < urns.size(); ++ri) {
        if (urns[ri].count(x) == 0) continue;
        for (std::size_t si = 0; si < urns.size(); ++si) {
          if (!x_dominates(positions[ri], positions[si], at)) continue;
          ++report.pairs;
          // Balls are stored in axis order, so equal physical indices are the
          // coupled, index-aligned draw.
          for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i; j < m; ++j) {
              for (std::size_t k = j; k < m; ++k) {
                Urn r_after = urns[ri];
                resolve_draw(r_after, make_draw(r_after, {i, j, k}), pop, Mechanism::kRemove, quasi);
                const auto r_pos = sorted_positions(r_after, pop);

                const TriadDraw s_draw = make_draw(urns[si], {i, j, k});
                const bool x_votes = s_draw.distinct_labels() &&
                                     std::find(s_draw.labels.begin(), s_draw.labels.end(), x) !=
                                         s_draw.labels.end();
                std::vector<StrategyProfile> actions;
                if (x_votes) {
                  for (ParticipantId c : candidates_for(x, s_draw.labels)) {
                    StrategyProfile p = quasi;
                    p.assign(x, Deviator{BaseStrategy::kQuasiTruthfulRemove,
                                         {{make_decision_point(s_draw.labels, 1), c}}});
                    actions.push_back(std::move(p));
                  }
                } else {
                  actions.push_back(quasi);
                }
                for (const auto& profile : actions) {
                  Urn s_after = urns[si];
                  const StepEvent ev = resolve_draw(s_after, s_draw, pop, Mechanism::kRemove, profile);
                  // Forcing a split is never optimal for x, so it is not an
                  // admissible action.
                  if (ev.removed) continue;
                  ++report.coupled_steps;
                  if (r_after.empty() || !x_dominates(r_pos, sorted_positions(s_after, pop), at)) {
                    ++report.violations;
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  return report;
}

}  // namespace triadic
