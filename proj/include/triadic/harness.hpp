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

// Replicated experiments. Replication i always runs on rng_stream(seed, i)
// and results are stored by index, so output does not depend on how the
// replications were scheduled across threads.

#ifndef TRIADIC_HARNESS_HPP_
#define TRIADIC_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "triadic/engine.hpp"
#include "triadic/model.hpp"
#include "triadic/oracle.hpp"
#include "triadic/strategies.hpp"

namespace triadic {

// Runs body(i) for i in [0, count) on up to `threads` workers (0: hardware
// concurrency). body must only touch state owned by index i.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

struct RepRow {
  std::size_t rep = 0;
  ParticipantId winner = 0;
  Point winner_point;
  std::size_t total_comparisons = 0;
  double votes_per_voter = 0.0;
  std::uint64_t ties = 0;
  std::uint64_t steps = 0;
};

std::vector<RepRow> replicate_runs(const Population& pop, std::size_t k, Mechanism mechanism,
                                   const StrategyProfile& profile, std::size_t reps,
                                   std::uint64_t seed, unsigned threads = 0);

struct SummaryStats {
  std::size_t reps = 0;
  Eigen::VectorXd mean_winner;
  double sigma_winner = 0.0;  // RMS distance of the winner from mean_winner
  double mean_votes_per_voter = 0.0;
  double sigma_votes_per_voter = 0.0;
  std::optional<ParticipantId> target;
  double target_win_fraction = 0.0;
  std::uint64_t total_ties = 0;
};

SummaryStats summarize(const std::vector<RepRow>& rows, std::optional<ParticipantId> target = {});

// rep,winner_id,winner_x[,winner_y],total_comparisons,votes_per_voter,ties
void write_raw_csv(std::ostream& os, const std::vector<RepRow>& rows, int dimension);

// Empirical winner frequencies over participant ids.
std::vector<double> winner_frequencies(const std::vector<RepRow>& rows, std::size_t n);

struct HittingTimeEstimate {
  std::size_t n = 0;
  double mean = 0.0;
  double standard_error = 0.0;
};

// Triadic steps (every draw counts) until a two-coloured line urn of n balls,
// starting from red0 red balls, is one colour.
HittingTimeEstimate two_colour_hitting_time(std::size_t n, std::size_t red0, std::size_t reps,
                                            std::uint64_t seed, unsigned threads = 0);

// Rank spreads on uniform[0,1] populations: how many participants lie below
// 1/2 (the sample median's offset from the population centre), and the
// protocol winner's rank (its offset from the sample median).
struct SamplingErrorEstimate {
  double sigma_sample_median = 0.0;
  double sigma_winner = 0.0;
};

SamplingErrorEstimate sampling_error(std::size_t n, std::size_t reps, std::uint64_t seed,
                                     unsigned threads = 0);

struct ApproxKEstimate {
  std::size_t k = 0;
  double bound = 0.0;               // allowed rank distance eps*sqrt(n)*c
  double fraction_within = 0.0;     // Monte Carlo
  double predicted_within = 0.0;    // from the exact winner law
};

// k = ceil(ln(1/delta) / eps^2) balls each on an n-participant line.
std::size_t approx_k_balls(double epsilon, double delta);
ApproxKEstimate approx_k(std::size_t n, double epsilon, double delta, double c, std::size_t reps,
                         std::uint64_t seed, unsigned threads = 0);

struct GrowthPoint {
  std::size_t n = 0;
  double mean_comparisons = 0.0;
  double ratio_nlog2n = 0.0;  // mean / (n ln^2 n)
  double ratio_nlogn = 0.0;   // mean / (n ln n), informational
};

struct GrowthReport {
  std::vector<GrowthPoint> points;
  double fitted_c = 0.0;  // fitted on the smallest sizes
  double slack = 1.1;
  bool pass = false;      // every size under slack * fitted_c * n ln^2 n
};

// Truthful line runs, k = 1. C is the largest ratio over the first
// `fit_points` sizes.
GrowthReport communication_growth(const std::vector<std::size_t>& sizes, std::size_t reps,
                                  std::uint64_t seed, std::size_t fit_points = 3,
                                  unsigned threads = 0);

struct Gate {
  std::string name;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool pass() const { return value >= lo && value <= hi; }
};

struct ExperimentSpec {
  std::string preset = "winner-dist";
  PopulationSpec population = LineSpec{{0, 1, 2, 3, 4}};
  std::size_t k = 1;
  Mechanism mechanism = Mechanism::kRemove;
  std::string strategy = "truthful";
  std::size_t reps = 1000;
  std::uint64_t seed = 1;
  std::string out;  // raw CSV path; the summary goes next to it
  unsigned threads = 0;

  // Preset-specific knobs.
  std::vector<std::size_t> sizes;  // etot, growth
  double epsilon = 0.5;
  double delta = 0.05;
  double c = 1.0;
  std::size_t bins = 50;
};

struct ExperimentResult {
  std::string preset;
  std::vector<std::string> columns;  // summary table
  std::vector<std::vector<std::string>> rows;
  std::vector<Gate> gates;
  std::vector<RepRow> raw;  // per-replication rows, when the preset has them
  int dimension = 1;

  bool passed() const;
};

// line:<n> (positions 0..n-1), line:<x0>,<x1>,..., grid:<m>, circle:<n>,
// uniform:<n>[:<seed>].
PopulationSpec parse_population_spec(const std::string& text);
// linear or power:<alpha>.
UtilityShape parse_utility_shape(const std::string& text);
std::vector<double> parse_reals(const std::string& csv);
std::vector<std::size_t> parse_sizes(const std::string& csv);

const std::vector<std::string>& preset_names();

// Spec filled with the preset's defaults; throws std::invalid_argument
// listing the valid names for an unknown preset.
ExperimentSpec preset_spec(const std::string& name);

ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_summary_csv(std::ostream& os, const ExperimentResult& result);

// Writes the raw rows to spec.out, the summary to <stem>.summary.csv and the
// gates to <stem>.gates.csv.
// Errors name the offending path.
void write_experiment(const ExperimentSpec& spec, const ExperimentResult& result);

}  // namespace triadic

#endif  // TRIADIC_HARNESS_HPP_
