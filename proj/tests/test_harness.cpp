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

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "triadic/harness.hpp"

namespace triadic {
namespace {

std::string raw_csv(const std::vector<RepRow>& rows) {
  std::ostringstream os;
  write_raw_csv(os, rows, 1);
  return os.str();
}

TEST_CASE("parallel_for covers every index once and rethrows") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](std::size_t i) {
                                 if (i == 7) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("replications do not depend on thread count") {
  const Population pop = equally_spaced_line(9);
  const auto one = replicate_runs(pop, 1, Mechanism::kRemove, StrategyProfile(), 300, 17, 1);
  const auto four = replicate_runs(pop, 1, Mechanism::kRemove, StrategyProfile(), 300, 17, 4);
  CHECK(raw_csv(one) == raw_csv(four));
  const auto other = replicate_runs(pop, 1, Mechanism::kRemove, StrategyProfile(), 300, 18, 1);
  CHECK(raw_csv(one) != raw_csv(other));
}

TEST_CASE("summary statistics") {
  std::vector<RepRow> rows(2);
  rows[0].winner = 0;
  rows[0].winner_point = make_point(0, 0);
  rows[0].votes_per_voter = 1;
  rows[1].winner = 3;
  rows[1].winner_point = make_point(2, 0);
  rows[1].votes_per_voter = 3;
  const auto s = summarize(rows, ParticipantId{3});
  CHECK(s.mean_winner(0) == doctest::Approx(1));
  CHECK(s.sigma_winner == doctest::Approx(1));
  CHECK(s.mean_votes_per_voter == doctest::Approx(2));
  CHECK(s.sigma_votes_per_voter == doctest::Approx(std::sqrt(2.0)));
  CHECK(s.target_win_fraction == doctest::Approx(0.5));
  CHECK(winner_frequencies(rows, 4) == std::vector<double>{0.5, 0, 0, 0.5});
}

TEST_CASE("two-colour hitting time stays under the bound") {
  const auto est = two_colour_hitting_time(16, 8, 2000, 3);
  CHECK(est.mean > 0);
  CHECK(est.mean <= time_bound(FixedUrnSpec{16, 8}) + 3 * est.standard_error);
  const auto exact = absorption_exact<double>(16, 8, triadic_urn<double>);
  CHECK(std::abs(est.mean - exact.expected_time) < 4 * est.standard_error);
}

TEST_CASE("sampling error is of order sqrt(n)") {
  const auto est = sampling_error(400, 1000, 2);
  CHECK(est.sigma_sample_median == doctest::Approx(10).epsilon(0.15));
  CHECK(est.sigma_winner == doctest::Approx(10).epsilon(0.15));
}

TEST_CASE("approximate median with few balls") {
  CHECK(approx_k_balls(0.5, 0.05) == 12);
  CHECK_THROWS_AS(approx_k_balls(0.5, 1.5), std::invalid_argument);
  const auto est = approx_k(100, 0.5, 0.05, 1.0, 300, 4);
  CHECK(est.k == 12);
  CHECK(est.bound == doctest::Approx(5));
  CHECK(est.fraction_within >= 0.95);
  CHECK(est.predicted_within >= 0.95);
}

TEST_CASE("communication growth report") {
  const auto report = communication_growth({8, 16, 32, 64}, 50, 9);
  REQUIRE(report.points.size() == 4);
  for (const auto& p : report.points) {
    CHECK(p.mean_comparisons > 0);
    const double ln = std::log(static_cast<double>(p.n));
    CHECK(p.ratio_nlog2n == doctest::Approx(p.mean_comparisons / (p.n * ln * ln)));
  }
  CHECK_THROWS_AS(communication_growth({}, 10, 1), std::invalid_argument);
}

TEST_CASE("spec parsing") {
  CHECK(std::get<LineSpec>(parse_population_spec("line:3")).positions == std::vector<double>{0, 1, 2});
  CHECK(std::get<LineSpec>(parse_population_spec("line:0,5,7")).positions ==
        std::vector<double>{0, 5, 7});
  CHECK(std::get<GridSpec>(parse_population_spec("grid:5")).m == 5);
  CHECK(std::get<CircleSpec>(parse_population_spec("circle:25")).n == 25);
  const auto u = std::get<UniformLineSpec>(parse_population_spec("uniform:40:3"));
  CHECK(u.n == 40);
  CHECK(u.seed == 3);
  CHECK_THROWS_AS(parse_population_spec("torus:3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_population_spec("grid"), std::invalid_argument);
  CHECK(parse_utility_shape("power:2").alpha() == 2.0);
  CHECK_THROWS_AS(parse_utility_shape("log"), std::invalid_argument);
  CHECK(parse_sizes("16,32") == std::vector<std::size_t>{16, 32});
  CHECK_THROWS_AS(parse_sizes("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_reals("a,b"), std::invalid_argument);
}

TEST_CASE("presets") {
  CHECK(preset_names().size() == 8);
  for (const auto& name : preset_names()) CHECK(preset_spec(name).preset == name);
  try {
    preset_spec("nope");
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("winner-dist") != std::string::npos);
  }
}

TEST_CASE("winner-dist experiment writes its files") {
  auto spec = preset_spec("winner-dist");
  spec.reps = 2000;
  const auto dir = std::filesystem::temp_directory_path() / "triadic_harness_test";
  std::filesystem::remove_all(dir);
  spec.out = (dir / "wd.csv").string();
  const auto result = run_experiment(spec);
  CHECK(result.passed());
  CHECK(result.raw.size() == 2000);
  write_experiment(spec, result);
  CHECK(std::filesystem::exists(dir / "wd.csv"));
  CHECK(std::filesystem::exists(dir / "wd.summary.csv"));
  std::ifstream gates(dir / "wd.gates.csv");
  std::string header;
  std::getline(gates, header);
  CHECK(header == "gate,value,lo,hi,pass");

  std::ifstream raw(dir / "wd.csv");
  std::getline(raw, header);
  CHECK(header == "rep,winner_id,winner_x,total_comparisons,votes_per_voter,ties");
}

TEST_CASE("output errors name the path") {
  auto spec = preset_spec("winner-dist");
  spec.reps = 10;
  spec.out = "/proc/triadic_cannot_write/x.csv";
  const auto result = run_experiment(spec);
  try {
    write_experiment(spec, result);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("/proc/triadic_cannot_write/x.csv") != std::string::npos);
  }
}

}  // namespace
}  // namespace triadic
