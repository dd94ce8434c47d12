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

#include "doctest.h"
#include "triadic/model.hpp"
#include "triadic/rng.hpp"

namespace triadic {
namespace {

TEST_CASE("distance and preference on a line") {
  const Population pop = generate_population(LineSpec{{0, 5, 7}});
  CHECK(distance(pop[0], pop[1]) == doctest::Approx(5));
  CHECK(distance(pop[1], pop[2]) == doctest::Approx(2));
  CHECK(prefer(pop[1], pop[0], pop[2]).id == 2);
  CHECK(prefer(pop[0], pop[1], pop[2]).id == 1);
  CHECK(utility_of(pop[0], pop[2]) == doctest::Approx(-7));
  CHECK_THROWS_AS(prefer(pop[0], pop[1], pop[1]), std::invalid_argument);
}

TEST_CASE("equidistant candidates go to the lower id") {
  const Population pop = generate_population(LineSpec{{0, 1, 2}});
  CHECK(prefer(pop[1], pop[2], pop[0]).id == 0);
  CHECK(prefer(pop[1], pop[0], pop[2]).id == 0);
}

TEST_CASE("distance in the plane") {
  const Point a = make_point(0, 0);
  const Point b = make_point(3, 4);
  CHECK(distance(a, b) == doctest::Approx(5));
  CHECK_THROWS_AS(distance(make_point(1.0), b), std::invalid_argument);
}

TEST_CASE("power utility") {
  const auto shape = UtilityShape::power(2.0);
  CHECK(shape(3.0) == doctest::Approx(-9));
  CHECK(UtilityShape::linear()(3.0) == doctest::Approx(-3));
  CHECK_THROWS_AS(UtilityShape::power(0.5), std::invalid_argument);
}

TEST_CASE("line ids follow axis rank") {
  const Population pop = generate_population(LineSpec{{7, 0, 5}});
  CHECK(pop.coordinate(0) == 0);
  CHECK(pop.coordinate(1) == 5);
  CHECK(pop.coordinate(2) == 7);
  CHECK(pop.one_dimensional());
}

TEST_CASE("grid and circle layouts") {
  const Population grid = generate_population(GridSpec{5});
  CHECK(grid.size() == 25);
  CHECK(grid.dimension() == 2);
  CHECK(grid[12].point(0) == 2);
  CHECK(grid[12].point(1) == 2);
  CHECK(condorcet_winner(grid) == std::optional<ParticipantId>(12));

  const Population circle = generate_population(CircleSpec{25});
  CHECK(circle.size() == 26);
  CHECK(circle[25].point.norm() == 0);
  for (ParticipantId i = 0; i < 25; ++i) CHECK(circle[i].point.norm() == doctest::Approx(1));
  CHECK(condorcet_winner(circle) == std::optional<ParticipantId>(25));
}

TEST_CASE("condorcet winner on a line is the median") {
  CHECK(condorcet_winner(equally_spaced_line(5)) == std::optional<ParticipantId>(2));
  CHECK(condorcet_winner(generate_population(LineSpec{{0, 1, 9, 10, 30}})) ==
        std::optional<ParticipantId>(2));
}

TEST_CASE("uniform line is reproducible") {
  const Population a = generate_population(UniformLineSpec{50, 9});
  const Population b = generate_population(UniformLineSpec{50, 9});
  const Population c = generate_population(UniformLineSpec{50, 10});
  bool differs = false;
  for (ParticipantId i = 0; i < 50; ++i) {
    CHECK(a.coordinate(i) == b.coordinate(i));
    CHECK(a.coordinate(i) >= 0.0);
    CHECK(a.coordinate(i) <= 1.0);
    if (i > 0) CHECK(a.coordinate(i - 1) <= a.coordinate(i));
    differs = differs || a.coordinate(i) != c.coordinate(i);
  }
  CHECK(differs);
}

TEST_CASE("invalid populations") {
  CHECK_THROWS_AS(generate_population(LineSpec{{}}), std::invalid_argument);
  CHECK_THROWS_AS(generate_population(GridSpec{0}), std::invalid_argument);
  CHECK_THROWS_AS(generate_population(CircleSpec{0}), std::invalid_argument);
  const Population pop = equally_spaced_line(3);
  CHECK_THROWS_AS(pop.with_utilities({UtilityShape::linear()}), std::invalid_argument);
}

TEST_CASE("population csv") {
  std::ostringstream os;
  write_population_csv(os, generate_population(LineSpec{{0, 2.5}}));
  CHECK(os.str() == "id,x\n0,0\n1,2.5\n");
}

TEST_CASE("rng streams are reproducible and separate") {
  Rng a = rng_stream(42, 3);
  Rng b = rng_stream(42, 3);
  Rng c = rng_stream(42, 4);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
}

}  // namespace
}  // namespace triadic
