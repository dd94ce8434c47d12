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

#include <sstream>
#include <vector>

#include "doctest.h"
#include "triadic/nash_lab.hpp"

namespace triadic {
namespace {

TEST_CASE("one-shot deviations in the four-participant example") {
  const Population pop = generate_population(LineSpec{{0, 5, 6, 7}});
  const Urn urn(4, 1);
  const auto draw = make_draw(urn, {0, 1, 3});

  const auto right = one_shot_deviation_check(pop, urn, draw, 3, Mechanism::kRemove);
  CHECK(right.prescribed == doctest::Approx(-15.0 / 8));
  CHECK(right.best_deviation == doctest::Approx(-25.0 / 4));
  CHECK_FALSE(right.profitable());

  const auto left = one_shot_deviation_check(pop, urn, draw, 0, Mechanism::kRemove);
  CHECK(left.prescribed == doctest::Approx(-41.0 / 8));
  CHECK(left.best_deviation == doctest::Approx(-6.0));

  const auto middle = one_shot_deviation_check(pop, urn, draw, 1, Mechanism::kRemove);
  CHECK(middle.delta == doctest::Approx(0.0));
  CHECK(middle.decision == "0-1-3@1");

  for (ParticipantId who : {0, 1, 3}) {
    CHECK_FALSE(one_shot_deviation_check(pop, urn, draw, who, Mechanism::kRepeatThenRemove).profitable());
  }
}

TEST_CASE("three participants alone") {
  const std::vector<double> xs = {0, 5, 7};
  const std::vector<UtilityShape> linear(3, UtilityShape::linear());
  const auto reports = enumerate_n3(xs, linear, Mechanism::kRemove, Regime::kIsolated);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].prescribed == doctest::Approx(-5));
  CHECK(reports[0].delta == doctest::Approx(-2));
  CHECK(reports[1].delta == doctest::Approx(0));
  CHECK(reports[2].prescribed == doctest::Approx(-2));
  CHECK(reports[2].delta == doctest::Approx(-1));
  CHECK(reports[0].regime == "isolated");

  const std::vector<double> far = {0, 1, 100};
  for (auto mech : {Mechanism::kRemove, Mechanism::kRepeatThenRemove}) {
    for (auto regime : {Regime::kIsolated, Regime::kEmbedded}) {
      for (const auto& r : enumerate_n3(far, linear, mech, regime)) CHECK_FALSE(r.profitable());
    }
  }

  const std::vector<double> two = {0, 1};
  CHECK(enumerate_n3(two, std::vector<UtilityShape>(2, UtilityShape::linear()), Mechanism::kRemove,
                     Regime::kIsolated)
            .empty());
  const std::vector<double> dup = {0, 0, 1};
  CHECK_THROWS_AS(enumerate_n3(dup, linear, Mechanism::kRemove, Regime::kIsolated),
                  std::invalid_argument);
}

TEST_CASE("random three-participant instances have no profitable deviation") {
  Rng rng = rng_stream(8, 0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> xs(3);
    for (auto& x : xs) x = 10.0 * uniform_real(rng);
    std::vector<UtilityShape> shapes;
    for (int i = 0; i < 3; ++i) shapes.push_back(UtilityShape::power(1.0 + 2.0 * uniform_real(rng)));
    for (auto mech : {Mechanism::kRemove, Mechanism::kRepeatThenRemove}) {
      for (auto regime : {Regime::kIsolated, Regime::kEmbedded}) {
        for (const auto& r : enumerate_n3(xs, shapes, mech, regime)) CHECK_FALSE(r.profitable());
      }
    }
  }
}

TEST_CASE("existence scan") {
  const auto report = existence_scan(10, 500, 3, true);
  CHECK(report.configs == 500);
  CHECK(report.violations == 0);
  CHECK(report.profitable_deviations == 0);
  CHECK_FALSE(report.rows.empty());
  std::ostringstream os;
  write_scan_csv(os, report);
  CHECK(os.str().rfind("config_id,triad,deviator,delta,verdict\n", 0) == 0);

  const auto again = existence_scan(10, 500, 3, false);
  CHECK(again.violations == report.violations);
  CHECK(again.rows.empty());
}

TEST_CASE("x-dominance") {
  const std::vector<double> r = {1, 3, 5};
  CHECK(x_dominates(r, r, 3));
  const std::vector<double> out = {0, 3, 6};
  CHECK(x_dominates(r, out, 3));
  const std::vector<double> in = {2, 3, 5};
  CHECK_FALSE(x_dominates(r, in, 3));
  const std::vector<double> moved_x = {1, 4, 5};
  CHECK_FALSE(x_dominates(r, moved_x, 3));
  const std::vector<double> shorter = {1, 3};
  CHECK_THROWS_AS(x_dominates(r, shorter, 3), std::invalid_argument);
  CHECK(x_dominates(DominancePair{r, out, 3}));

  const Population pop = equally_spaced_line(4);
  const Urn a(4, std::vector<ParticipantId>{0, 2});
  const Urn b(4, std::vector<ParticipantId>{0, 3});
  CHECK(x_dominates(a, b, 1, pop));
  CHECK_FALSE(x_dominates(b, a, 1, pop));
}

TEST_CASE("x-dominance is reflexive and transitive") {
  Rng rng = rng_stream(12, 0);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t m = 1 + uniform_index(rng, 5);
    const double x = static_cast<double>(uniform_index(rng, 6));
    auto draw_urn = [&] {
      std::vector<double> u(m);
      for (auto& v : u) v = static_cast<double>(uniform_index(rng, 6));
      std::sort(u.begin(), u.end());
      return u;
    };
    const auto a = draw_urn(), b = draw_urn(), c = draw_urn();
    CHECK(x_dominates(a, a, x));
    if (x_dominates(a, b, x) && x_dominates(b, c, x)) CHECK(x_dominates(a, c, x));
  }
}

TEST_CASE("coupled steps preserve dominance") {
  const Population pop = generate_population(LineSpec{{0, 1, 3, 4, 7}});
  const auto report = coupled_step_check(pop, 4);
  CHECK(report.pairs > 0);
  CHECK(report.coupled_steps > 0);
  CHECK(report.violations == 0);
  const auto squared = coupled_step_check(pop.with_utility(UtilityShape::power(2.0)), 4);
  CHECK(squared.violations == 0);
}

}  // namespace
}  // namespace triadic
