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

#include "triadic/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "triadic/baselines.hpp"

namespace triadic {

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
      (void)t;
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::vector<RepRow> replicate_runs(const Population& pop, std::size_t k, Mechanism mechanism,
                                   const StrategyProfile& profile, std::size_t reps,
                                   std::uint64_t seed, unsigned threads) {
  std::vector<RepRow> rows(reps);
  parallel_for(reps, threads, [&](std::size_t rep) {
    Rng rng = rng_stream(seed, rep);
    const RunRecord record = run(pop, k, mechanism, profile, rng);
    rows[rep] = {rep,
                 record.winner,
                 pop[record.winner].point,
                 record.total_comparisons,
                 record.votes_per_voter(),
                 record.ties,
                 record.steps};
  });
  return rows;
}

SummaryStats summarize(const std::vector<RepRow>& rows, std::optional<ParticipantId> target) {
  SummaryStats stats;
  stats.reps = rows.size();
  stats.target = target;
  if (rows.empty()) return stats;
  const double n = static_cast<double>(rows.size());
  stats.mean_winner = Eigen::VectorXd::Zero(rows.front().winner_point.size());
  std::size_t hits = 0;
  for (const auto& row : rows) {
    stats.mean_winner += row.winner_point;
    stats.mean_votes_per_voter += row.votes_per_voter;
    stats.total_ties += row.ties;
    hits += target && row.winner == *target;
  }
  stats.mean_winner /= n;
  stats.mean_votes_per_voter /= n;
  double spread = 0.0;
  double votes = 0.0;
  for (const auto& row : rows) {
    spread += (row.winner_point - stats.mean_winner).squaredNorm();
    votes += std::pow(row.votes_per_voter - stats.mean_votes_per_voter, 2);
  }
  stats.sigma_winner = std::sqrt(spread / n);
  stats.sigma_votes_per_voter = rows.size() > 1 ? std::sqrt(votes / (n - 1)) : 0.0;
  stats.target_win_fraction = static_cast<double>(hits) / n;
  return stats;
}

void write_raw_csv(std::ostream& os, const std::vector<RepRow>& rows, int dimension) {
  os << "rep,winner_id,winner_x" << (dimension == 2 ? ",winner_y" : "")
     << ",total_comparisons,votes_per_voter,ties\n";
  os.precision(17);
  for (const auto& row : rows) {
    os << row.rep << ',' << row.winner << ',' << row.winner_point(0);
    if (dimension == 2) os << ',' << row.winner_point(1);
    os << ',' << row.total_comparisons << ',' << row.votes_per_voter << ',' << row.ties << '\n';
  }
}

std::vector<double> winner_frequencies(const std::vector<RepRow>& rows, std::size_t n) {
  std::vector<double> freq(n, 0.0);
  for (const auto& row : rows) freq.at(row.winner) += 1.0;
  for (auto& f : freq) f /= static_cast<double>(std::max<std::size_t>(rows.size(), 1));
  return freq;
}

namespace {

double mean_of(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sd_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

HittingTimeEstimate two_colour_hitting_time(std::size_t n, std::size_t red0, std::size_t reps,
                                            std::uint64_t seed, unsigned threads) {
  if (n < 1 || red0 > n || reps < 1) throw std::invalid_argument("two_colour_hitting_time: bad arguments");
  const Population pop = equally_spaced_line(n);
  const StrategyProfile truthful;
  std::vector<double> times(reps);
  parallel_for(reps, threads, [&](std::size_t rep) {
    Rng rng = rng_stream(seed, rep);
    Urn urn(n, 1);
    // Labels below red0 are red.
    std::size_t red = red0;
    std::uint64_t t = 0;
    while (red != 0 && red != n) {
      step(urn, pop, Mechanism::kRemove, truthful, rng);
      ++t;
      red = 0;
      for (ParticipantId id = 0; id < red0; ++id) red += urn.count(id);
    }
    times[rep] = static_cast<double>(t);
  });
  return {n, mean_of(times), sd_of(times) / std::sqrt(static_cast<double>(reps))};
}

SamplingErrorEstimate sampling_error(std::size_t n, std::size_t reps, std::uint64_t seed,
                                     unsigned threads) {
  std::vector<double> below(reps);
  std::vector<double> winner(reps);
  const StrategyProfile truthful;
  parallel_for(reps, threads, [&](std::size_t rep) {
    Rng rng = rng_stream(seed, rep);
    std::vector<double> xs(n);
    for (auto& x : xs) x = uniform_real(rng);
    const Population pop = generate_population(LineSpec{xs});
    std::size_t k = 0;
    for (const auto& p : pop) k += p.point(0) < 0.5;
    below[rep] = static_cast<double>(k);
    winner[rep] = static_cast<double>(run(pop, 1, Mechanism::kRemove, truthful, rng).winner);
  });
  return {sd_of(below), sd_of(winner)};
}

std::size_t approx_k_balls(double epsilon, double delta) {
  if (!(epsilon > 0) || !(delta > 0 && delta < 1)) {
    throw std::invalid_argument("approx_k_balls: need eps > 0 and 0 < delta < 1");
  }
  return static_cast<std::size_t>(std::ceil(std::log(1.0 / delta) / (epsilon * epsilon)));
}

ApproxKEstimate approx_k(std::size_t n, double epsilon, double delta, double c, std::size_t reps,
                         std::uint64_t seed, unsigned threads) {
  ApproxKEstimate est;
  est.k = approx_k_balls(epsilon, delta);
  est.bound = epsilon * std::sqrt(static_cast<double>(n)) * c;
  const double centre = (static_cast<double>(n) - 1.0) / 2.0;
  const auto within = [&](std::size_t id) {
    return std::abs(static_cast<double>(id) - centre) <= est.bound + 1e-12;
  };
  const Eigen::VectorXd law = winner_distribution(n, est.k);
  for (std::size_t i = 0; i < n; ++i) {
    if (within(i)) est.predicted_within += law(static_cast<Eigen::Index>(i));
  }
  const auto rows = replicate_runs(equally_spaced_line(n), est.k, Mechanism::kRemove,
                                   StrategyProfile(), reps, seed, threads);
  std::size_t hits = 0;
  for (const auto& row : rows) hits += within(row.winner);
  est.fraction_within = static_cast<double>(hits) / static_cast<double>(reps);
  return est;
}

GrowthReport communication_growth(const std::vector<std::size_t>& sizes, std::size_t reps,
                                  std::uint64_t seed, std::size_t fit_points, unsigned threads) {
  if (sizes.empty() || fit_points == 0) throw std::invalid_argument("communication_growth: no sizes");
  GrowthReport report;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const std::size_t n = sizes[i];
    if (n < 2) throw std::invalid_argument("communication_growth: need n >= 2");
    const auto rows = replicate_runs(equally_spaced_line(n), 1, Mechanism::kRemove,
                                     StrategyProfile(), reps, seed + i, threads);
    double total = 0.0;
    for (const auto& row : rows) total += static_cast<double>(row.total_comparisons);
    const double mean = total / static_cast<double>(reps);
    const double nd = static_cast<double>(n);
    const double ln = std::log(nd);
    report.points.push_back({n, mean, mean / (nd * ln * ln), mean / (nd * ln)});
  }
  for (std::size_t i = 0; i < std::min(fit_points, report.points.size()); ++i) {
    report.fitted_c = std::max(report.fitted_c, report.points[i].ratio_nlog2n);
  }
  report.pass = std::all_of(report.points.begin(), report.points.end(), [&](const GrowthPoint& p) {
    return p.ratio_nlog2n <= report.slack * report.fitted_c;
  });
  return report;
}

bool ExperimentResult::passed() const {
  return std::all_of(gates.begin(), gates.end(), [](const Gate& g) { return g.pass(); });
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"winner-dist", "grid", "circle",
                                                 "etot", "sampling-error", "approx-k",
                                                 "density", "baseline-equiv"};
  return names;
}

namespace {

LineSpec line_of(std::size_t n) {
  LineSpec spec;
  for (std::size_t i = 0; i < n; ++i) spec.positions.push_back(static_cast<double>(i));
  return spec;
}

std::size_t population_size(const PopulationSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LineSpec>) return s.positions.size();
        else if constexpr (std::is_same_v<T, GridSpec>) return s.m * s.m;
        else if constexpr (std::is_same_v<T, CircleSpec>) return s.n + 1;
        else return s.n;
      },
      spec);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string fmt(std::size_t v) { return std::to_string(v); }

ExperimentResult winner_dist(const ExperimentSpec& spec) {
  ExperimentResult result;
  const Population pop = generate_population(spec.population);
  if (!pop.one_dimensional()) throw std::invalid_argument("winner-dist: needs a line population");
  const StrategyProfile profile = StrategyProfile::parse(spec.strategy);
  result.raw = replicate_runs(pop, spec.k, spec.mechanism, profile, spec.reps, spec.seed, spec.threads);
  const auto freq = winner_frequencies(result.raw, pop.size());
  const Eigen::VectorXd exact = winner_distribution(pop.size(), spec.k);
  result.columns = {"id", "x", "empirical", "exact"};
  for (std::size_t i = 0; i < pop.size(); ++i) {
    result.rows.push_back({fmt(i), fmt(pop.coordinate(i)), fmt(freq[i]),
                           fmt(exact(static_cast<Eigen::Index>(i)))});
  }
  const std::vector<double> exact_v(exact.data(), exact.data() + exact.size());
  const double tv = total_variation(freq, exact_v);
  const double n = static_cast<double>(pop.size());
  result.gates.push_back({"total_variation", tv, 0.0, 3.0 * std::sqrt(n / static_cast<double>(spec.reps))});
  return result;
}

ExperimentResult grid(const ExperimentSpec& spec) {
  ExperimentResult result;
  const auto* g = std::get_if<GridSpec>(&spec.population);
  if (g == nullptr) throw std::invalid_argument("grid: needs a grid population");
  const Population pop = generate_population(spec.population);
  result.dimension = 2;
  result.raw = replicate_runs(pop, spec.k, spec.mechanism, StrategyProfile::parse(spec.strategy),
                              spec.reps, spec.seed, spec.threads);
  const SummaryStats s = summarize(result.raw);
  result.columns = {"m", "mean_winner_x", "mean_winner_y", "sigma_winner",
                    "mean_votes_per_voter", "sigma_votes_per_voter"};
  result.rows.push_back({fmt(g->m), fmt(s.mean_winner(0)), fmt(s.mean_winner(1)),
                         fmt(s.sigma_winner), fmt(s.mean_votes_per_voter),
                         fmt(s.sigma_votes_per_voter)});
  if (g->m == 5) {
    result.gates.push_back({"mean_winner_x", s.mean_winner(0), 2.0 - 0.35, 2.0 + 0.35});
    result.gates.push_back({"mean_winner_y", s.mean_winner(1), 2.0 - 0.35, 2.0 + 0.35});
    result.gates.push_back({"mean_votes_per_voter", s.mean_votes_per_voter, 1.966 - 0.35, 1.966 + 0.35});
  } else if (g->m == 10) {
    result.gates.push_back({"mean_votes_per_voter", s.mean_votes_per_voter, 3.405 - 0.6, 3.405 + 0.6});
  }
  return result;
}

ExperimentResult circle(const ExperimentSpec& spec) {
  ExperimentResult result;
  const auto* c = std::get_if<CircleSpec>(&spec.population);
  if (c == nullptr) throw std::invalid_argument("circle: needs a circle population");
  const Population pop = generate_population(spec.population);
  result.dimension = 2;
  result.raw = replicate_runs(pop, spec.k, spec.mechanism, StrategyProfile::parse(spec.strategy),
                              spec.reps, spec.seed, spec.threads);
  const ParticipantId centre = c->n;
  const SummaryStats s = summarize(result.raw, centre);
  result.columns = {"n", "center_win_fraction", "mean_votes_per_voter", "sigma_votes_per_voter"};
  result.rows.push_back({fmt(c->n), fmt(s.target_win_fraction), fmt(s.mean_votes_per_voter),
                         fmt(s.sigma_votes_per_voter)});
  if (c->n == 25) result.gates.push_back({"center_win_fraction", s.target_win_fraction, 0.368 - 0.06, 0.368 + 0.06});
  if (c->n == 100) result.gates.push_back({"center_win_fraction", s.target_win_fraction, 0.338 - 0.06, 0.338 + 0.06});
  return result;
}

ExperimentResult etot(const ExperimentSpec& spec) {
  ExperimentResult result;
  result.columns = {"n", "mean_steps", "standard_error", "time_bound", "exact_expected_time"};
  for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
    const std::size_t n = spec.sizes[i];
    const auto est = two_colour_hitting_time(n, n / 2, spec.reps, spec.seed + i, spec.threads);
    const double bound = time_bound({n, n / 2});
    const double exact = absorption_exact({n, n / 2}).expected_time;
    result.rows.push_back({fmt(n), fmt(est.mean), fmt(est.standard_error), fmt(bound), fmt(exact)});
    result.gates.push_back({"mean_steps_n" + fmt(n), est.mean, 0.0, bound + 3.0 * est.standard_error});
  }
  return result;
}

ExperimentResult sampling(const ExperimentSpec& spec) {
  ExperimentResult result;
  const std::size_t n = population_size(spec.population);
  const auto est = sampling_error(n, spec.reps, spec.seed, spec.threads);
  const double target = 0.5 * std::sqrt(static_cast<double>(n));
  result.columns = {"n", "sigma_sample_median_rank", "sigma_winner_rank", "half_sqrt_n"};
  result.rows.push_back({fmt(n), fmt(est.sigma_sample_median), fmt(est.sigma_winner), fmt(target)});
  result.gates.push_back({"sigma_sample_median_rank", est.sigma_sample_median, 0.9 * target, 1.1 * target});
  result.gates.push_back({"sigma_winner_rank", est.sigma_winner, 0.9 * target, 1.1 * target});
  return result;
}

ExperimentResult approx(const ExperimentSpec& spec) {
  ExperimentResult result;
  const std::size_t n = population_size(spec.population);
  const auto est = approx_k(n, spec.epsilon, spec.delta, spec.c, spec.reps, spec.seed, spec.threads);
  result.columns = {"n", "epsilon", "delta", "c", "k", "rank_bound", "fraction_within", "predicted_within"};
  result.rows.push_back({fmt(n), fmt(spec.epsilon), fmt(spec.delta), fmt(spec.c), fmt(est.k),
                         fmt(est.bound), fmt(est.fraction_within), fmt(est.predicted_within)});
  result.gates.push_back({"fraction_within", est.fraction_within, 1.0 - spec.delta, 1.0});
  return result;
}

ExperimentResult density_preset(const ExperimentSpec& spec) {
  ExperimentResult result;
  const std::size_t n = population_size(spec.population);
  result.columns = {"kind", "n", "bins", "reps", "l1_distance"};
  for (DensityKind kind : {DensityKind::kTriadic, DensityKind::kHotOrNot}) {
    const auto hist = one_step_winner_density(kind, n, spec.reps, spec.bins, spec.seed);
    const double l1 = l1_distance(hist, kind);
    result.rows.push_back({to_string(kind), fmt(n), fmt(spec.bins), fmt(spec.reps), fmt(l1)});
    result.gates.push_back({"l1_" + to_string(kind), l1, 0.0, 0.05});
  }
  return result;
}

ExperimentResult baseline_equiv(const ExperimentSpec& spec) {
  ExperimentResult result;
  result.columns = {"baseline", "n", "method", "distance"};
  for (std::size_t n : spec.sizes) {
    const auto exact = winner_distribution_exact(n);
    for (BaselineKind kind : {BaselineKind::kRemoveRandomExtreme, BaselineKind::kContractExtremes}) {
      const auto law = kind == BaselineKind::kRemoveRandomExtreme ? remove_random_extreme_law(n)
                                                                  : contract_extremes_law(n);
      const double equal = law == exact ? 1.0 : 0.0;
      result.rows.push_back({to_string(kind), fmt(n), "exact", equal == 1.0 ? "0" : "nonzero"});
      result.gates.push_back({"exact_" + to_string(kind) + "_n" + fmt(n), equal, 1.0, 1.0});
    }
  }
  const std::size_t n = population_size(spec.population);
  const Population pop = equally_spaced_line(n);
  const Eigen::VectorXd exact = winner_distribution(n);
  const std::vector<double> exact_v(exact.data(), exact.data() + exact.size());
  for (BaselineKind kind : {BaselineKind::kRemoveRandomExtreme, BaselineKind::kContractExtremes}) {
    std::vector<ParticipantId> winners(spec.reps);
    parallel_for(spec.reps, spec.threads, [&](std::size_t rep) {
      Rng rng = rng_stream(spec.seed, rep);
      winners[rep] = run_baseline(kind, pop, rng);
    });
    std::vector<double> freq(n, 0.0);
    for (auto w : winners) freq[w] += 1.0 / static_cast<double>(spec.reps);
    const double tv = total_variation(freq, exact_v);
    result.rows.push_back({to_string(kind), fmt(n), "monte-carlo", fmt(tv)});
    result.gates.push_back({"tv_" + to_string(kind) + "_n" + fmt(n), tv, 0.0, 0.01});
  }
  return result;
}

}  // namespace

std::vector<double> parse_reals(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw std::invalid_argument("not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& csv) {
  std::vector<std::size_t> out;
  for (double v : parse_reals(csv)) {
    if (v < 0 || v != std::floor(v)) throw std::invalid_argument("not a count: " + fmt(v));
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

PopulationSpec parse_population_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("space '" + text + "': expected line:..|grid:m|circle:n|uniform:n");
  }
  const std::string kind = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  if (kind == "line") {
    if (arg.find(',') == std::string::npos) return line_of(parse_sizes(arg).at(0));
    return LineSpec{parse_reals(arg)};
  }
  if (kind == "grid") return GridSpec{parse_sizes(arg).at(0)};
  if (kind == "circle") return CircleSpec{parse_sizes(arg).at(0)};
  if (kind == "uniform") {
    const auto at = arg.find(':');
    const std::size_t n = parse_sizes(arg.substr(0, at)).at(0);
    const std::uint64_t seed = at == std::string::npos ? 0 : std::stoull(arg.substr(at + 1));
    return UniformLineSpec{n, seed};
  }
  throw std::invalid_argument("space '" + text + "': unknown kind '" + kind + "'");
}

UtilityShape parse_utility_shape(const std::string& text) {
  if (text == "linear") return UtilityShape::linear();
  if (text.rfind("power:", 0) == 0) return UtilityShape::power(parse_reals(text.substr(6)).at(0));
  throw std::invalid_argument("utility '" + text + "': expected linear or power:<alpha>");
}

ExperimentSpec preset_spec(const std::string& name) {
  ExperimentSpec spec;
  spec.preset = name;
  if (name == "winner-dist") {
    spec.population = line_of(5);
    spec.reps = 10000;
  } else if (name == "grid") {
    spec.population = GridSpec{5};
    spec.reps = 100;
  } else if (name == "circle") {
    spec.population = CircleSpec{25};
    spec.reps = 1000;
  } else if (name == "etot") {
    spec.sizes = {8, 16, 32, 64};
    spec.reps = 10000;
  } else if (name == "sampling-error") {
    spec.population = UniformLineSpec{400, 0};
    spec.reps = 10000;
  } else if (name == "approx-k") {
    spec.population = line_of(100);
    spec.reps = 1000;
  } else if (name == "density") {
    spec.population = UniformLineSpec{3, 0};
    spec.reps = 100000;
  } else if (name == "baseline-equiv") {
    spec.population = line_of(25);
    spec.sizes = {1, 2, 3, 4, 5, 6, 7, 8};
    spec.reps = 100000;
  } else {
    std::string valid;
    for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown preset '" + name + "'; valid presets: " + valid);
  }
  return spec;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.reps < 1) throw std::invalid_argument("experiment: need reps >= 1");
  preset_spec(spec.preset);  // validates the name
  ExperimentResult result;
  if (spec.preset == "winner-dist") result = winner_dist(spec);
  else if (spec.preset == "grid") result = grid(spec);
  else if (spec.preset == "circle") result = circle(spec);
  else if (spec.preset == "etot") result = etot(spec);
  else if (spec.preset == "sampling-error") result = sampling(spec);
  else if (spec.preset == "approx-k") result = approx(spec);
  else if (spec.preset == "density") result = density_preset(spec);
  else result = baseline_equiv(spec);
  result.preset = spec.preset;
  return result;
}

void write_summary_csv(std::ostream& os, const ExperimentResult& result) {
  for (std::size_t i = 0; i < result.columns.size(); ++i) os << (i ? "," : "") << result.columns[i];
  os << '\n';
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

namespace {

std::ofstream open_or_throw(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return os;
}

void close_or_throw(std::ofstream& os, const std::filesystem::path& path) {
  os.close();
  if (!os) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

void write_experiment(const ExperimentSpec& spec, const ExperimentResult& result) {
  if (spec.out.empty()) return;
  const std::filesystem::path raw_path(spec.out);
  std::filesystem::path stem = raw_path;
  stem.replace_extension();

  auto raw = open_or_throw(raw_path);
  write_raw_csv(raw, result.raw, result.dimension);
  close_or_throw(raw, raw_path);

  const std::filesystem::path summary_path = stem.string() + ".summary.csv";
  auto summary = open_or_throw(summary_path);
  write_summary_csv(summary, result);
  close_or_throw(summary, summary_path);

  const std::filesystem::path gates_path = stem.string() + ".gates.csv";
  auto gates = open_or_throw(gates_path);
  gates << "gate,value,lo,hi,pass\n";
  gates.precision(10);
  for (const auto& g : result.gates) {
    gates << g.name << ',' << g.value << ',' << g.lo << ',' << g.hi << ',' << (g.pass() ? "yes" : "no") << '\n';
  }
  close_or_throw(gates, gates_path);
}

}  // namespace triadic
