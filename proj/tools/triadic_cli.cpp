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

// Command-line front end. Exit status: 0 pass, 1 gate failure, 2 usage error.
//
//   triadic run --space grid:5 --seed 7
//   triadic experiment --preset circle --space circle:100 --out out/circle.csv
//   triadic oracle absorption --n 5 --r0 2
//   triadic nash --check n3 --positions 0,5,7
//
// --config <file> reads `key = value` lines with the same keys as the flags
// of the chosen subcommand; flags given on the command line win.

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "triadic/baselines.hpp"
#include "triadic/engine.hpp"
#include "triadic/harness.hpp"
#include "triadic/nash_lab.hpp"
#include "triadic/oracle.hpp"

namespace {

using namespace triadic;

constexpr int kPass = 0;
constexpr int kGateFailure = 1;
constexpr int kUsage = 2;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splices `key = value` lines from --config into argv, after the subcommand
// path, for every key not already given as a flag.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot read '" + path + "'");

  std::set<std::string> given;
  for (const auto& a : args) {
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
  }
  std::vector<std::string> extra;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--config", "expected key = value: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (given.count(key)) continue;
    if (value == "true") {
      extra.push_back("--" + key);
    } else if (value != "false") {
      extra.push_back("--" + key);
      extra.push_back(value);
    }
  }
  // Subcommand words come first (program name, then up to two words).
  std::size_t insert_at = 1;
  while (insert_at < args.size() && insert_at < 3 && args[insert_at].rfind("-", 0) != 0) ++insert_at;
  args.insert(args.begin() + static_cast<long>(insert_at), extra.begin(), extra.end());
  return args;
}

int report_gates(const std::vector<Gate>& gates) {
  bool ok = true;
  for (const auto& g : gates) {
    std::cout << (g.pass() ? "PASS " : "FAIL ") << g.name << " = " << g.value << " in [" << g.lo
              << ", " << g.hi << "]\n";
    ok = ok && g.pass();
  }
  return ok ? kPass : kGateFailure;
}

std::string rational_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

struct RunArgs {
  std::string space = "line:5";
  std::string utility = "linear";
  std::size_t k = 1;
  std::string mechanism = "remove";
  std::string strategy = "truthful";
  std::uint64_t seed = 1;
  std::string trace;
};

int do_run(const RunArgs& a) {
  const Population pop = generate_population(parse_population_spec(a.space), parse_utility_shape(a.utility));
  RunOptions options;
  options.trace = !a.trace.empty();
  const RunRecord r = run(pop, a.k, parse_mechanism(a.mechanism), StrategyProfile::parse(a.strategy),
                          a.seed, options);
  std::cout.precision(10);
  std::cout << "winner: " << r.winner << " at (" << pop[r.winner].point.transpose() << ")\n"
            << "steps: " << r.steps << "\n"
            << "total_comparisons: " << r.total_comparisons << "\n"
            << "votes_per_voter: " << r.votes_per_voter() << "\n"
            << "ties: " << r.ties << "\n"
            << "urn_emptied: " << (r.urn_emptied ? "yes" : "no") << "\n";
  if (r.strategy_fallback) std::cout << "note: quasi-truthful strategy played truthfully in 2-D\n";
  if (options.trace) {
    std::ofstream os(a.trace);
    if (!os) throw std::runtime_error("cannot open '" + a.trace + "' for writing");
    write_trace_csv(os, r.trace);
  }
  return kPass;
}

struct ExperimentArgs {
  std::string preset;
  std::string space;
  std::string sizes;
  std::size_t k = 0;
  std::string mechanism;
  std::string strategy;
  std::size_t reps = 0;
  std::uint64_t seed = 1;
  std::string out;
  double epsilon = -1;
  double delta = -1;
  double c = -1;
  std::size_t bins = 0;
  unsigned threads = 0;
};

int do_experiment(const ExperimentArgs& a) {
  ExperimentSpec spec = preset_spec(a.preset);
  if (!a.space.empty()) spec.population = parse_population_spec(a.space);
  if (!a.sizes.empty()) spec.sizes = parse_sizes(a.sizes);
  if (a.k) spec.k = a.k;
  if (!a.mechanism.empty()) spec.mechanism = parse_mechanism(a.mechanism);
  if (!a.strategy.empty()) spec.strategy = a.strategy;
  if (a.reps) spec.reps = a.reps;
  spec.seed = a.seed;
  spec.out = a.out;
  if (a.epsilon > 0) spec.epsilon = a.epsilon;
  if (a.delta > 0) spec.delta = a.delta;
  if (a.c > 0) spec.c = a.c;
  if (a.bins) spec.bins = a.bins;
  spec.threads = a.threads;
  const ExperimentResult result = run_experiment(spec);
  write_summary_csv(std::cout, result);
  write_experiment(spec, result);
  return report_gates(result.gates);
}

struct OracleArgs {
  std::size_t n = 5;
  std::size_t r0 = 1;
  std::size_t k = 1;
  std::size_t l = 1;
  std::size_t n_min = 4;
  std::size_t n_max = 40;
  std::string kind = "triadic";
  double x = 0.5;
  std::string f = "linear";
  std::string c, d, s1, s2, t1, t2;
  std::string out;
};

int do_oracle(const std::string& which, const OracleArgs& a) {
  std::cout.precision(17);
  if (which == "closed") {
    std::cout << "p_red_wins: " << rational_string(absorption_prob_closed_exact(a.n, a.r0)) << " = "
              << absorption_prob_closed(a.n, a.r0) << "\n";
  } else if (which == "absorption") {
    const auto r = absorption_exact(FixedUrnSpec{a.n, a.r0});
    std::cout << "p_red_wins: " << r.p_red_wins << "\nexpected_time: " << r.expected_time << "\n";
  } else if (which == "winner-dist") {
    const Eigen::VectorXd w = a.k == 1 ? winner_distribution(a.n) : winner_distribution(a.n, a.k);
    std::cout << "id,probability\n";
    for (Eigen::Index i = 0; i < w.size(); ++i) std::cout << i << ',' << w(i) << '\n';
  } else if (which == "time-bound") {
    std::cout << "time_bound: " << time_bound(FixedUrnSpec{a.n, a.n / 2}) << "\n";
  } else if (which == "delta") {
    const auto dp = delta_win_prob_exact(a.n, a.l);
    std::cout << "i,delta,as_stated_positive,symmetric_positive\n";
    for (std::size_t i = 0; i < dp.size(); ++i) {
      std::cout << i + 1 << ',' << rational_string(dp[i]) << ','
                << delta_positive_as_stated(a.n, a.l, i + 1) << ','
                << delta_positive_symmetric(a.n, a.l, i + 1) << '\n';
    }
  } else if (which == "sign-pattern") {
    const auto r = check_delta_sign_pattern(a.n_min, a.n_max);
    std::cout << "cases: " << r.cases << "\nexact_zeros: " << r.zero_entries
              << "\nas_stated_mismatches: " << r.as_stated_mismatches.size()
              << "\nsymmetric_mismatches: " << r.symmetric_mismatches.size() << "\n";
    for (const auto& m : r.as_stated_mismatches) {
      std::cout << "  as-stated n=" << m.n << " l=" << m.l << " i=" << m.i << " delta=" << rational_string(m.delta) << "\n";
    }
    return r.symmetric_mismatches.empty() && r.zero_entries == 0 ? kPass : kGateFailure;
  } else if (which == "density") {
    const DensityKind kind = parse_density_kind(a.kind);
    std::cout << to_string(kind) << "(" << a.x << ") = " << density(kind, a.x) << "\n";
  } else if (which == "concave") {
    const UtilityShape shape = parse_utility_shape(a.f);
    const auto f = [&](double v) { return shape(v); };
    const bool ok = concave_ineq_check(f, parse_reals(a.c), parse_reals(a.d), parse_reals(a.s1),
                                       parse_reals(a.s2), parse_reals(a.t1), parse_reals(a.t2));
    std::cout << "holds: " << (ok ? "yes" : "no") << "\n";
    return ok ? kPass : kGateFailure;
  } else if (which == "table") {
    if (a.out.empty()) {
      write_oracle_table_csv(std::cout, a.n_min, a.n_max);
    } else {
      std::ofstream os(a.out);
      if (!os) throw std::runtime_error("cannot open '" + a.out + "' for writing");
      write_oracle_table_csv(os, a.n_min, a.n_max);
    }
  }
  return kPass;
}

struct NashArgs {
  std::string check;
  std::string positions = "0,5,7";
  std::string utility = "linear";
  std::string mechanism = "remove";
  std::string regime = "isolated";
  std::string urn;
  std::string draw;
  std::size_t deviator = 0;
  std::size_t n_max = 12;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::string out;
  std::string r, s;
  double x = 0.0;
  std::size_t max_balls = 6;
};

void print_report(const DeviationReport& d) {
  std::cout << "deviator " << d.deviator << " at " << d.decision
            << (d.regime.empty() ? "" : " (" + d.regime + ")") << ": prescribed " << d.prescribed
            << ", best deviation " << d.best_deviation << ", delta " << d.delta
            << (d.profitable() ? "  PROFITABLE" : "") << "\n";
}

int do_nash(const NashArgs& a) {
  std::cout.precision(12);
  const Mechanism mechanism = parse_mechanism(a.mechanism);
  const UtilityShape shape = parse_utility_shape(a.utility);
  if (a.check == "n3") {
    const auto xs = parse_reals(a.positions);
    const std::vector<UtilityShape> shapes(xs.size(), shape);
    const Regime regime = a.regime == "embedded" ? Regime::kEmbedded : Regime::kIsolated;
    if (a.regime != "embedded" && a.regime != "isolated") throw CLI::ValidationError("--regime", "isolated|embedded");
    bool ok = true;
    for (const auto& d : enumerate_n3(xs, shapes, mechanism, regime)) {
      print_report(d);
      ok = ok && !d.profitable();
    }
    return ok ? kPass : kGateFailure;
  }
  if (a.check == "oneshot") {
    const Population pop = generate_population(LineSpec{parse_reals(a.positions)}, shape);
    const auto labels = parse_sizes(a.urn);
    const Urn urn(pop.size(), std::vector<ParticipantId>(labels.begin(), labels.end()));
    const auto balls = parse_sizes(a.draw);
    if (balls.size() != 3) throw CLI::ValidationError("--draw", "three ball indices");
    const auto d = one_shot_deviation_check(pop, urn, make_draw(urn, {balls[0], balls[1], balls[2]}),
                                            a.deviator, mechanism);
    print_report(d);
    return d.profitable() ? kGateFailure : kPass;
  }
  if (a.check == "existence") {
    const auto report = existence_scan(a.n_max, a.trials, a.seed, !a.out.empty());
    std::cout << "configs: " << report.configs << "\nviolations: " << report.violations
              << "\nprofitable_deviations: " << report.profitable_deviations << "\n";
    if (!a.out.empty()) {
      std::ofstream os(a.out);
      if (!os) throw std::runtime_error("cannot open '" + a.out + "' for writing");
      write_scan_csv(os, report);
    }
    return report.violations == 0 && report.profitable_deviations == 0 ? kPass : kGateFailure;
  }
  if (a.check == "dominance") {
    if (!a.r.empty() || !a.s.empty()) {
      const bool dom = x_dominates(parse_reals(a.r), parse_reals(a.s), a.x);
      std::cout << "x_dominates: " << (dom ? "yes" : "no") << "\n";
      return kPass;
    }
    const Population pop = generate_population(LineSpec{parse_reals(a.positions)}, shape);
    const auto report = coupled_step_check(pop, a.max_balls);
    std::cout << "pairs: " << report.pairs << "\ncoupled_steps: " << report.coupled_steps
              << "\nviolations: " << report.violations << "\n";
    return report.violations == 0 ? kPass : kGateFailure;
  }
  throw CLI::ValidationError("--check", "n3|oneshot|existence|dominance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triadic urn consensus: simulation, analytic oracle and equilibrium checks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run the protocol once");
  run_cmd->add_option("--space", run_args.space, "line:n | line:x0,x1,.. | grid:m | circle:n | uniform:n[:seed]");
  run_cmd->add_option("--utility", run_args.utility, "linear | power:alpha");
  run_cmd->add_option("--k", run_args.k, "Balls per participant")->check(CLI::PositiveNumber);
  run_cmd->add_option("--mechanism", run_args.mechanism, "remove | repeat");
  run_cmd->add_option("--strategy", run_args.strategy, "truthful | quasi-remove | quasi-repeat | deviator:...");
  run_cmd->add_option("--seed", run_args.seed);
  run_cmd->add_option("--trace", run_args.trace, "Write the per-step trace CSV here");

  ExperimentArgs exp_args;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a replicated experiment preset");
  std::string presets;
  for (const auto& n : preset_names()) presets += (presets.empty() ? "" : " | ") + n;
  exp_cmd->add_option("--preset", exp_args.preset, presets)->required();
  exp_cmd->add_option("--space", exp_args.space, "Population override");
  exp_cmd->add_option("--sizes", exp_args.sizes, "Comma-separated sizes (etot, baseline-equiv)");
  exp_cmd->add_option("--k", exp_args.k);
  exp_cmd->add_option("--mechanism", exp_args.mechanism);
  exp_cmd->add_option("--strategy", exp_args.strategy);
  exp_cmd->add_option("--reps", exp_args.reps);
  exp_cmd->add_option("--seed", exp_args.seed);
  exp_cmd->add_option("--out", exp_args.out, "Raw CSV path");
  exp_cmd->add_option("--epsilon", exp_args.epsilon);
  exp_cmd->add_option("--delta", exp_args.delta);
  exp_cmd->add_option("--c", exp_args.c, "Rank-bound constant for approx-k");
  exp_cmd->add_option("--bins", exp_args.bins);
  exp_cmd->add_option("--threads", exp_args.threads, "0 = all cores");

  OracleArgs or_args;
  std::string oracle_which;
  auto* or_cmd = app.add_subcommand("oracle", "Analytic ground truth");
  or_cmd->require_subcommand(1);
  const auto add_oracle = [&](const std::string& name, const std::string& help) {
    auto* sub = or_cmd->add_subcommand(name, help);
    sub->callback([&oracle_which, name] { oracle_which = name; });
    return sub;
  };
  auto* o_closed = add_oracle("closed", "Closed-form absorption probability");
  auto* o_abs = add_oracle("absorption", "Absorption probability and expected time by linear solve");
  auto* o_win = add_oracle("winner-dist", "Winner law over sorted participants");
  auto* o_tb = add_oracle("time-bound", "Hitting-time bound");
  auto* o_delta = add_oracle("delta", "Winning-probability change from removing three balls");
  auto* o_sign = add_oracle("sign-pattern", "Sign pattern of the change over a range of n");
  auto* o_den = add_oracle("density", "One-step winner density");
  auto* o_conc = add_oracle("concave", "Ratio inequalities for a concave decreasing f");
  auto* o_table = add_oracle("table", "CSV table of absorption values");
  for (auto* sub : {o_closed, o_abs, o_win, o_tb, o_delta}) sub->add_option("--n", or_args.n);
  for (auto* sub : {o_closed, o_abs}) sub->add_option("--r0", or_args.r0);
  o_win->add_option("--k", or_args.k);
  o_delta->add_option("--l", or_args.l);
  for (auto* sub : {o_sign, o_table}) {
    sub->add_option("--n-min", or_args.n_min);
    sub->add_option("--n-max", or_args.n_max);
  }
  o_table->add_option("--out", or_args.out);
  o_den->add_option("--kind", or_args.kind, "triadic | hotornot | uniform");
  o_den->add_option("--x", or_args.x);
  o_conc->add_option("--f", or_args.f, "linear | power:alpha");
  o_conc->add_option("--c", or_args.c)->required();
  o_conc->add_option("--d", or_args.d)->required();
  o_conc->add_option("--s1", or_args.s1)->required();
  o_conc->add_option("--s2", or_args.s2)->required();
  o_conc->add_option("--t1", or_args.t1)->required();
  o_conc->add_option("--t2", or_args.t2)->required();

  NashArgs nash_args;
  auto* nash_cmd = app.add_subcommand("nash", "Equilibrium checks");
  nash_cmd->add_option("--check", nash_args.check, "n3 | oneshot | existence | dominance")->required();
  nash_cmd->add_option("--positions", nash_args.positions);
  nash_cmd->add_option("--utility", nash_args.utility);
  nash_cmd->add_option("--mechanism", nash_args.mechanism);
  nash_cmd->add_option("--regime", nash_args.regime, "isolated | embedded");
  nash_cmd->add_option("--urn", nash_args.urn, "Ball labels, comma-separated");
  nash_cmd->add_option("--draw", nash_args.draw, "Three ball indices");
  nash_cmd->add_option("--deviator", nash_args.deviator);
  nash_cmd->add_option("--n-max", nash_args.n_max);
  nash_cmd->add_option("--trials", nash_args.trials);
  nash_cmd->add_option("--seed", nash_args.seed);
  nash_cmd->add_option("--out", nash_args.out);
  nash_cmd->add_option("--r", nash_args.r, "Sorted positions of urn R");
  nash_cmd->add_option("--s", nash_args.s, "Sorted positions of urn S");
  nash_cmd->add_option("--x", nash_args.x);
  nash_cmd->add_option("--max-balls", nash_args.max_balls);

  std::vector<std::string> args(argv, argv + argc);
  try {
    args = expand_config(std::move(args));
    std::vector<const char*> raw;
    for (const auto& s : args) raw.push_back(s.c_str());
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*run_cmd) return do_run(run_args);
    if (*exp_cmd) return do_experiment(exp_args);
    if (*or_cmd) return do_oracle(oracle_which, or_args);
    if (*nash_cmd) return do_nash(nash_args);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
