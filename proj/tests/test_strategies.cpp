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

#include <vector>

#include "doctest.h"
#include "triadic/engine.hpp"
#include "triadic/rng.hpp"
#include "triadic/strategies.hpp"

namespace triadic {
namespace {

// Positions 0, 5, 6, 7 with ids 0..3; the drawn triad is ids 0, 1, 3.
struct Example {
  Population pop = generate_population(LineSpec{{0, 5, 6, 7}});
  Urn urn{4, 1};
  TriadDraw draw = make_draw(urn, {0, 1, 3});
};

TEST_CASE("expected utility of an urn") {
  const Population pop = generate_population(LineSpec{{0, 5, 6, 7}});
  const std::vector<double> p = {5, 5, 5, 6};
  CHECK(expected_utility(p, pop[0]) == doctest::Approx(-41.0 / 8));
  CHECK(expected_utility(p, pop[3]) == doctest::Approx(-15.0 / 8));
  const std::vector<double> q = {0, 0, 0, 6};
  CHECK(expected_utility(q, pop[3]) == doctest::Approx(-25.0 / 4));
  const std::vector<double> single = {6};
  CHECK(expected_utility(single, pop[0]) == doctest::Approx(-6));

  const std::vector<std::size_t> counts = {0, 3, 1, 0};
  CHECK(expected_utility(counts, pop[0], pop) == doctest::Approx(-41.0 / 8));
  const Urn urn(4, std::vector<ParticipantId>{1, 2, 1, 1});
  CHECK(expected_utility(urn, pop[3], pop) == doctest::Approx(-15.0 / 8));
}

TEST_CASE("expected utility is monotone in the urn") {
  // Moving one ball away from x never helps x.
  const Population pop = equally_spaced_line(8);
  Rng rng = rng_stream(11, 0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> r(1 + uniform_index(rng, 7));
    for (auto& v : r) v = static_cast<double>(uniform_index(rng, 8));
    std::sort(r.begin(), r.end());
    const auto& x = pop[uniform_index(rng, 8)];
    const std::size_t j = uniform_index(rng, r.size());
    std::vector<double> s = r;
    s[j] += (r[j] >= x.point(0)) ? 1.0 : -1.0;
    std::sort(s.begin(), s.end());
    CHECK(expected_utility(s, x) <= expected_utility(r, x) + 1e-12);
  }
}

TEST_CASE("truthful votes and the truthful winner") {
  Example ex;
  CHECK(truthful_winner(ex.draw.labels, ex.pop) == 1);
  CHECK(thinks_should_win(1, ex.draw.labels, ex.pop));
  CHECK_FALSE(thinks_should_win(0, ex.draw.labels, ex.pop));
  CHECK_FALSE(thinks_should_win(3, ex.draw.labels, ex.pop));

  const StrategyProfile truthful;
  VoteContext ctx{ex.pop, ex.urn, ex.draw, 0};
  CHECK(decide_vote(truthful.of(0), ctx) == 1);
  ctx.voter = 1;
  CHECK(decide_vote(truthful.of(1), ctx) == 3);
  ctx.voter = 3;
  CHECK(decide_vote(truthful.of(3), ctx) == 1);

  CHECK(candidates_for(1, ex.draw.labels) == std::array<ParticipantId, 2>{0, 3});
  CHECK_THROWS_AS(candidates_for(2, ex.draw.labels), std::invalid_argument);
}

TEST_CASE("win versus tie gains") {
  Example ex;
  CHECK(win_vs_tie_gain(1, 0, ex.draw, ex.urn, ex.pop) == doctest::Approx(7.0 / 8));
  CHECK(win_vs_tie_gain(1, 3, ex.draw, ex.urn, ex.pop) == doctest::Approx(-7.0 / 8));
  CHECK(prefers_win_over_tie(1, 0, ex.draw, ex.urn, ex.pop));
  CHECK_FALSE(prefers_win_over_tie(1, 3, ex.draw, ex.urn, ex.pop));
}

TEST_CASE("three balls left: a tie is a uniform lottery") {
  const Population pop = generate_population(LineSpec{{-1, 0, 1}});
  const Urn urn(3, 1);
  const auto draw = make_draw(urn, {0, 1, 2});
  CHECK(win_vs_tie_gain(1, 0, draw, urn, pop) == doctest::Approx(0.0));
  CHECK(win_vs_tie_gain(1, 2, draw, urn, pop) == doctest::Approx(0.0));
  const std::vector<ParticipantId> removed = {0, 1, 2};
  CHECK(lottery_utility(removed, pop[0], pop) == doctest::Approx(-1.0));
}

TEST_CASE("quasi-truthful votes") {
  Example ex;
  VoteContext ctx{ex.pop, ex.urn, ex.draw, 1};
  CHECK(decide_vote(BaseStrategy::kQuasiTruthfulRemove, ctx) == 0);
  ctx.voter = 0;
  CHECK(decide_vote(BaseStrategy::kQuasiTruthfulRemove, ctx) == 1);

  ctx.voter = 1;
  CHECK(decide_vote(BaseStrategy::kQuasiTruthfulRepeat, ctx) == 3);
  ctx.round = 2;
  ctx.first_round_vote = 3;
  CHECK(decide_vote(BaseStrategy::kQuasiTruthfulRepeat, ctx) == 0);
  ctx.first_round_vote = 0;
  CHECK(decide_vote(BaseStrategy::kQuasiTruthfulRepeat, ctx) == 3);
}

TEST_CASE("some side always prefers the median winning") {
  Rng rng = rng_stream(5, 0);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 3 + uniform_index(rng, 6);
    std::vector<double> xs(n);
    for (auto& x : xs) x = 10.0 * uniform_real(rng);
    const Population pop = generate_population(LineSpec{xs}, UtilityShape::power(1.0 + 2.0 * uniform_real(rng)));
    std::vector<ParticipantId> labels;
    for (ParticipantId id = 0; id < n; ++id) {
      for (std::size_t c = uniform_index(rng, 3); c > 0; --c) labels.push_back(id);
    }
    std::array<ParticipantId, 3> triad{};
    for (auto& t : triad) {
      t = uniform_index(rng, n);
      labels.push_back(t);
    }
    if (triad[0] == triad[1] || triad[0] == triad[2] || triad[1] == triad[2]) continue;
    const Urn urn(n, labels);
    const std::size_t m = labels.size();
    const auto draw = make_draw(urn, {m - 3, m - 2, m - 1});
    std::sort(triad.begin(), triad.end());
    CHECK((prefers_win_over_tie(triad[1], triad[0], draw, urn, pop) ||
           prefers_win_over_tie(triad[1], triad[2], draw, urn, pop)));
  }
}

TEST_CASE("profile parsing") {
  CHECK(std::get<BaseStrategy>(StrategyProfile::parse("truthful").of(4)) == BaseStrategy::kTruthful);
  CHECK(std::get<BaseStrategy>(StrategyProfile::parse("quasi-remove").of(0)) ==
        BaseStrategy::kQuasiTruthfulRemove);
  const auto profile = StrategyProfile::parse("deviator:3:truthful:0-1-3=0;0-1-3@2=1");
  const auto& dev = std::get<Deviator>(profile.of(3));
  CHECK(dev.overrides.size() == 2);
  CHECK(dev.overrides.at(make_decision_point({3, 0, 1}, 1)) == 0);
  CHECK(dev.overrides.at(make_decision_point({0, 1, 3}, 2)) == 1);
  CHECK(std::holds_alternative<BaseStrategy>(profile.of(1)));

  CHECK(StrategyProfile::parse("quasi-repeat").uses_quasi_truthful());
  CHECK_FALSE(StrategyProfile::parse("quasi-repeat").truthful_fallback().uses_quasi_truthful());

  CHECK_THROWS_AS(StrategyProfile::parse("sincere"), std::invalid_argument);
  CHECK_THROWS_AS(StrategyProfile::parse("deviator:3:truthful:0-1-2=0"), std::invalid_argument);
  CHECK_THROWS_AS(StrategyProfile::parse("deviator:3:truthful:0-1-3=3"), std::invalid_argument);
  CHECK_THROWS_AS(StrategyProfile::parse("deviator:3:truthful:0-1=0"), std::invalid_argument);
  CHECK(parse_base_strategy(to_string(BaseStrategy::kQuasiTruthfulRepeat)) ==
        BaseStrategy::kQuasiTruthfulRepeat);
}

TEST_CASE("two-dimensional populations fall back to truthful") {
  const Population grid = generate_population(GridSpec{3});
  const Urn urn(9, 1);
  const auto draw = make_draw(urn, {0, 4, 8});
  VoteContext ctx{grid, urn, draw, 4};
  CHECK(decide_vote(BaseStrategy::kQuasiTruthfulRemove, ctx) ==
        decide_vote(BaseStrategy::kTruthful, ctx));
}

}  // namespace
}  // namespace triadic
