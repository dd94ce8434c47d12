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

#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "triadic/engine.hpp"
#include "triadic/rng.hpp"

namespace triadic {
namespace {

std::vector<std::size_t> counts_of(const Urn& urn) {
  return {urn.counts().begin(), urn.counts().end()};
}

TEST_CASE("urn bookkeeping") {
  Urn urn(3, 2);
  CHECK(urn.size() == 6);
  CHECK(urn.distinct_labels() == 3);
  urn.relabel(0, 1);
  urn.relabel(1, 1);
  CHECK(urn.count(0) == 0);
  CHECK(urn.distinct_labels() == 2);
  const std::array<std::size_t, 2> gone = {2, 3};
  urn.remove(gone);
  CHECK(urn.size() == 4);
  CHECK(urn.count(1) == 2);
  CHECK(urn.count(2) == 2);
  const std::array<std::size_t, 2> twice = {0, 0};
  CHECK_THROWS_AS(urn.remove(twice), std::invalid_argument);
  CHECK_THROWS_AS(Urn(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(Urn(2, std::vector<ParticipantId>{0, 2}), std::invalid_argument);
}

TEST_CASE("a clear triad winner absorbs the other balls") {
  const Population pop = generate_population(LineSpec{{0, 5, 6, 7}});
  Urn urn(4, 1);
  const auto event = resolve_draw(urn, make_draw(urn, {0, 1, 3}), pop, Mechanism::kRemove,
                                  StrategyProfile());
  CHECK(event.winner() == std::optional<ParticipantId>(1));
  CHECK(event.comparisons == 3);
  CHECK(counts_of(urn) == std::vector<std::size_t>{0, 3, 1, 0});
}

TEST_CASE("a split triad is removed") {
  const Population pop = generate_population(LineSpec{{0, 5, 6, 7}});
  Urn urn(4, 1);
  const auto profile = StrategyProfile::parse("deviator:3:truthful:0-1-3=0");
  const auto event = resolve_draw(urn, make_draw(urn, {0, 1, 3}), pop, Mechanism::kRemove, profile);
  CHECK(event.removed);
  CHECK(event.first.outcome.is_tie());
  CHECK(urn.size() == 1);
  CHECK(urn.label(0) == 2);
}

TEST_CASE("repeat mechanism: second round") {
  const Population pop = generate_population(LineSpec{{0, 5, 6, 7}});
  {
    Urn urn(4, 1);
    const auto profile = StrategyProfile::parse("deviator:3:truthful:0-1-3=0;0-1-3@2=1");
    const auto event =
        resolve_draw(urn, make_draw(urn, {0, 1, 3}), pop, Mechanism::kRepeatThenRemove, profile);
    REQUIRE(event.repeat.has_value());
    CHECK(event.winner() == std::optional<ParticipantId>(1));
    CHECK(event.comparisons == 6);
    CHECK(counts_of(urn) == std::vector<std::size_t>{0, 3, 1, 0});
  }
  {
    Urn urn(4, 1);
    const auto profile = StrategyProfile::parse("deviator:3:truthful:0-1-3=0;0-1-3@2=0");
    const auto event =
        resolve_draw(urn, make_draw(urn, {0, 1, 3}), pop, Mechanism::kRepeatThenRemove, profile);
    CHECK(event.removed);
    CHECK(urn.size() == 1);
  }
}

TEST_CASE("majority draws need no comparisons") {
  const Population pop = equally_spaced_line(3);
  Urn urn(3, std::vector<ParticipantId>{0, 0, 2, 1});
  std::vector<std::size_t> comps(3, 0);
  const auto event =
      resolve_draw(urn, make_draw(urn, {0, 1, 2}), pop, Mechanism::kRemove, StrategyProfile(), &comps);
  CHECK(event.winner() == std::optional<ParticipantId>(0));
  CHECK(event.comparisons == 0);
  CHECK(comps == std::vector<std::size_t>{0, 0, 0});
  CHECK(counts_of(urn) == std::vector<std::size_t>{3, 1, 0});

  // The same ball drawn twice is relabelled once.
  Urn repeat(3, std::vector<ParticipantId>{0, 1, 2});
  const auto e2 = resolve_draw(repeat, make_draw(repeat, {1, 1, 2}), pop, Mechanism::kRemove,
                               StrategyProfile());
  CHECK(e2.winner() == std::optional<ParticipantId>(1));
  CHECK(counts_of(repeat) == std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("runs are deterministic in the seed") {
  const Population pop = equally_spaced_line(9);
  const RunRecord a = run(pop, 2, Mechanism::kRemove, StrategyProfile(), 77);
  const RunRecord b = run(pop, 2, Mechanism::kRemove, StrategyProfile(), 77);
  CHECK(a.winner == b.winner);
  CHECK(a.comparisons == b.comparisons);
  CHECK(a.steps == b.steps);
  std::size_t total = 0;
  for (auto c : a.comparisons) total += c;
  CHECK(total == a.total_comparisons);
  CHECK(a.total_comparisons == 3 * a.contested_votes);
}

TEST_CASE("truthful line runs never tie") {
  const Population pop = generate_population(UniformLineSpec{15, 3});
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const RunRecord r = run(pop, 1 + seed % 3, Mechanism::kRemove, StrategyProfile(), seed);
    CHECK(r.ties == 0);
    CHECK_FALSE(r.urn_emptied);
    CHECK(r.winner < 15);
  }
}

TEST_CASE("every contested triad on a line is won by its median") {
  const Population pop = equally_spaced_line(12);
  for (const char* strategy : {"truthful", "quasi-remove", "quasi-repeat"}) {
    const auto profile = StrategyProfile::parse(strategy);
    const Mechanism mech = std::string(strategy) == "quasi-repeat" ? Mechanism::kRepeatThenRemove
                                                                   : Mechanism::kRemove;
    Rng rng = rng_stream(3, 0);
    for (int rep = 0; rep < 50; ++rep) {
      Urn urn(12, 2);
      while (urn.distinct_labels() > 1) {
        const auto event = step(urn, pop, mech, profile, rng);
        if (!event.draw.distinct_labels()) continue;
        auto sorted = event.draw.labels;
        std::sort(sorted.begin(), sorted.end());
        CHECK(event.winner() == std::optional<ParticipantId>(sorted[1]));
      }
    }
  }
}

TEST_CASE("quasi-truthful winners match truthful winners path by path") {
  const Population pop = generate_population(UniformLineSpec{11, 8});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RunRecord t = run(pop, 2, Mechanism::kRemove, StrategyProfile(), seed);
    const RunRecord qr = run(pop, 2, Mechanism::kRemove, StrategyProfile::parse("quasi-remove"), seed);
    const RunRecord qp = run(pop, 2, Mechanism::kRepeatThenRemove,
                             StrategyProfile::parse("quasi-repeat"), seed);
    CHECK(t.winner == qr.winner);
    CHECK(t.winner == qp.winner);
    CHECK(qr.ties == 0);
    CHECK(qp.ties == 0);
  }
}

TEST_CASE("two participants: each wins half the time") {
  const Population pop = equally_spaced_line(2);
  int zero = 0;
  const int reps = 20000;
  for (int rep = 0; rep < reps; ++rep) {
    if (run(pop, 1, Mechanism::kRemove, StrategyProfile(), static_cast<std::uint64_t>(rep)).winner == 0) {
      ++zero;
    }
  }
  const double p = static_cast<double>(zero) / reps;
  CHECK(std::abs(p - 0.5) < 4.0 * std::sqrt(0.25 / reps));
}

TEST_CASE("single participant wins without voting") {
  const RunRecord r = run(equally_spaced_line(1), 3, Mechanism::kRemove, StrategyProfile(), 1);
  CHECK(r.winner == 0);
  CHECK(r.steps == 0);
  CHECK(r.total_comparisons == 0);
}

TEST_CASE("an emptied urn picks uniformly among the last triad") {
  // Everyone else truthful, participant 2 always splits the vote.
  const Population pop = generate_population(LineSpec{{0, 5, 7}});
  const auto profile = StrategyProfile::parse("deviator:2:truthful:0-1-2=0");
  std::array<int, 3> wins{};
  int emptied = 0;
  for (std::uint64_t seed = 0; seed < 30000; ++seed) {
    const RunRecord r = run(pop, 1, Mechanism::kRemove, profile, seed);
    if (!r.urn_emptied) continue;
    ++emptied;
    ++wins[r.winner];
    CHECK(r.final_urn_size == 0);
  }
  REQUIRE(emptied > 1000);
  for (int w : wins) {
    const double p = static_cast<double>(w) / emptied;
    CHECK(std::abs(p - 1.0 / 3) < 4.0 * std::sqrt(2.0 / 9 / emptied));
  }
}

TEST_CASE("two-colour projection follows the urn function") {
  // Ids 0..3 red, 4..7 blue; 4 red balls out of 10.
  const Population pop = equally_spaced_line(8);
  const Urn start(8, std::vector<ParticipantId>{0, 1, 2, 3, 4, 4, 5, 6, 7, 7});
  const double p = 0.4;
  const double up = 3 * p * p * (1 - p);    // two red, one blue
  const double down = 3 * p * (1 - p) * (1 - p);
  Rng rng = rng_stream(21, 0);
  const int reps = 200000;
  int ups = 0, downs = 0;
  for (int rep = 0; rep < reps; ++rep) {
    Urn urn = start;
    step(urn, pop, Mechanism::kRemove, StrategyProfile(), rng);
    std::size_t red = 0;
    for (ParticipantId id = 0; id < 4; ++id) red += urn.count(id);
    if (red == 5) ++ups;
    else if (red == 3) ++downs;
    else CHECK(red == 4);
  }
  CHECK(std::abs(ups / double(reps) - up) < 4.0 * std::sqrt(up * (1 - up) / reps));
  CHECK(std::abs(downs / double(reps) - down) < 4.0 * std::sqrt(down * (1 - down) / reps));
}

TEST_CASE("trace output") {
  const Population pop = generate_population(LineSpec{{0, 5, 6, 7}});
  RunOptions options;
  options.trace = true;
  const RunRecord r = run(pop, 1, Mechanism::kRemove, StrategyProfile(), 3, options);
  CHECK(r.trace.size() == r.steps);
  std::ostringstream os;
  write_trace_csv(os, r.trace);
  CHECK(os.str().rfind("step,", 0) == 0);
  CHECK(os.str().find("win:") != std::string::npos);
}

TEST_CASE("mechanism names") {
  CHECK(parse_mechanism("remove") == Mechanism::kRemove);
  CHECK(parse_mechanism("repeat") == Mechanism::kRepeatThenRemove);
  CHECK(parse_mechanism(to_string(Mechanism::kRepeatThenRemove)) == Mechanism::kRepeatThenRemove);
  CHECK_THROWS_AS(parse_mechanism("veto"), std::invalid_argument);
}

TEST_CASE("quasi-truthful in the plane is flagged") {
  const RunRecord r = run(generate_population(GridSpec{3}), 1, Mechanism::kRemove,
                          StrategyProfile::parse("quasi-remove"), 2);
  CHECK(r.strategy_fallback);
}

}  // namespace
}  // namespace triadic
