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

#include "triadic/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "triadic/strategies.hpp"

namespace triadic {

std::string to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kRemoveRandomExtreme: return "remove-random-extreme";
    case BaselineKind::kContractExtremes: return "contract-extremes";
    case BaselineKind::kHotOrNot: return "hotornot";
  }
  return "?";
}

BaselineKind parse_baseline_kind(const std::string& name) {
  if (name == "remove-random-extreme") return BaselineKind::kRemoveRandomExtreme;
  if (name == "contract-extremes") return BaselineKind::kContractExtremes;
  if (name == "hotornot") return BaselineKind::kHotOrNot;
  throw std::invalid_argument("unknown baseline '" + name +
                              "' (remove-random-extreme|contract-extremes|hotornot)");
}

namespace {

void require_line(const Population& pop, const char* who) {
  if (!pop.one_dimensional()) throw std::invalid_argument(std::string(who) + ": needs a 1-D population");
}

// Lowest id among participants sharing the coordinate of `id`.
ParticipantId lowest_at(const Population& pop, ParticipantId id) {
  while (id > 0 && pop.coordinate(id - 1) == pop.coordinate(id)) --id;
  return id;
}

}  // namespace

ParticipantId remove_random_extreme(const Population& pop, Rng& rng) {
  require_line(pop, "remove_random_extreme");
  // Ids are in axis order, so live balls stay sorted.
  std::vector<ParticipantId> live(pop.size());
  std::iota(live.begin(), live.end(), ParticipantId{0});
  while (live.size() > 1) {
    if (uniform_index(rng, 2) == 0) {
      live.erase(live.begin());
    } else {
      const double right = pop.coordinate(live.back());
      auto it = std::find_if(live.begin(), live.end(),
                             [&](ParticipantId id) { return pop.coordinate(id) == right; });
      live.erase(it);
    }
  }
  return live.front();
}

ParticipantId contract_extremes(const Population& pop, Rng& rng) {
  require_line(pop, "contract_extremes");
  // Each ball is stored as the participant whose position it currently sits on.
  std::vector<ParticipantId> at(pop.size());
  std::iota(at.begin(), at.end(), ParticipantId{0});
  while (true) {
    std::size_t left = 0;
    std::size_t right = 0;
    for (std::size_t b = 1; b < at.size(); ++b) {
      if (pop.coordinate(at[b]) < pop.coordinate(at[left])) left = b;
      if (pop.coordinate(at[b]) > pop.coordinate(at[right])) right = b;
    }
    if (pop.coordinate(at[left]) == pop.coordinate(at[right])) return lowest_at(pop, at[left]);
    const ParticipantId target = at[uniform_index(rng, at.size())];
    at[left] = target;
    at[right] = target;
  }
}

ParticipantId hotornot_run(const Population& pop, Rng& rng) {
  std::vector<ParticipantId> balls(pop.size());
  std::iota(balls.begin(), balls.end(), ParticipantId{0});
  std::vector<std::size_t> counts(pop.size(), 1);
  std::size_t distinct = pop.size();
  const std::size_t m = balls.size();
  while (distinct > 1) {
    const std::size_t c1 = uniform_index(rng, m);
    std::size_t c2 = uniform_index(rng, m - 1);
    if (c2 >= c1) ++c2;
    std::size_t voter;
    if (m >= 3) {
      voter = uniform_index(rng, m - 2);
      for (std::size_t taken : {std::min(c1, c2), std::max(c1, c2)}) voter += voter >= taken;
    } else {
      voter = uniform_index(rng, m);
    }
    const ParticipantId a = balls[c1];
    const ParticipantId b = balls[c2];
    if (a == b) continue;
    const ParticipantId w = prefer(pop[balls[voter]], pop[a], pop[b]).id;
    for (std::size_t c : {c1, c2}) {
      if (balls[c] == w) continue;
      if (--counts[balls[c]] == 0) --distinct;
      ++counts[w];
      balls[c] = w;
    }
  }
  return balls.front();
}

ParticipantId run_baseline(BaselineKind kind, const Population& pop, Rng& rng) {
  switch (kind) {
    case BaselineKind::kRemoveRandomExtreme: return remove_random_extreme(pop, rng);
    case BaselineKind::kContractExtremes: return contract_extremes(pop, rng);
    case BaselineKind::kHotOrNot: return hotornot_run(pop, rng);
  }
  throw std::invalid_argument("run_baseline: unknown kind");
}

std::vector<Rational> remove_random_extreme_law(std::size_t n) {
  if (n < 1 || n > 64) throw std::invalid_argument("remove_random_extreme_law: need 1 <= n <= 64");
  // reach[lo][hi]: probability the live interval is ever [lo, hi].
  std::vector<std::vector<Rational>> reach(n, std::vector<Rational>(n));
  reach[0][n - 1] = 1;
  const Rational half(1, 2);
  for (std::size_t width = n; width > 1; --width) {
    for (std::size_t lo = 0; lo + width <= n; ++lo) {
      const std::size_t hi = lo + width - 1;
      if (reach[lo][hi] == 0) continue;
      reach[lo + 1][hi] += half * reach[lo][hi];
      reach[lo][hi - 1] += half * reach[lo][hi];
    }
  }
  std::vector<Rational> law(n);
  for (std::size_t i = 0; i < n; ++i) law[i] = reach[i][i];
  return law;
}

namespace {

using State = std::vector<std::uint8_t>;  // sorted positions of the balls

// Solves a x = b for every column of b, exactly. `a` must be nonsingular.
std::vector<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> a,
                                               std::vector<std::vector<Rational>> b) {
  const std::size_t m = a.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && a[pivot][col] == 0) ++pivot;
    if (pivot == m) throw std::domain_error("solve_exact: singular system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const Rational inv = 1 / a[col][col];
    for (auto& v : a[col]) if (v != 0) v *= inv;
    for (auto& v : b[col]) if (v != 0) v *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational factor = a[r][col];
      for (std::size_t c = col; c < m; ++c) {
        if (a[col][c] != 0) a[r][c] -= factor * a[col][c];
      }
      for (std::size_t c = 0; c < b[r].size(); ++c) {
        if (b[col][c] != 0) b[r][c] -= factor * b[col][c];
      }
    }
  }
  return b;
}

}  // namespace

std::vector<Rational> contract_extremes_law(std::size_t n) {
  if (n < 1 || n > 10) throw std::invalid_argument("contract_extremes_law: need 1 <= n <= 10");
  if (n == 1) return {Rational(1)};

  std::map<State, std::size_t> index;
  std::vector<State> states;
  State start(n);
  std::iota(start.begin(), start.end(), std::uint8_t{0});
  index[start] = 0;
  states.push_back(start);
  // Successors with their ball multiplicities; absorbing states are never
  // entered into the index.
  std::vector<std::vector<std::pair<State, std::size_t>>> moves;
  for (std::size_t s = 0; s < states.size(); ++s) {
    const State cur = states[s];
    std::map<std::uint8_t, std::size_t> mult;
    for (auto v : cur) ++mult[v];
    std::vector<std::pair<State, std::size_t>> out;
    for (const auto& [target, count] : mult) {
      State next = cur;
      next.front() = target;
      next.back() = target;
      std::sort(next.begin(), next.end());
      if (next.front() != next.back() && !index.count(next)) {
        index[next] = states.size();
        states.push_back(next);
      }
      out.emplace_back(std::move(next), count);
    }
    moves.push_back(std::move(out));
  }

  const std::size_t m = states.size();
  const Rational step(1, static_cast<long>(n));
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m));
  std::vector<std::vector<Rational>> b(m, std::vector<Rational>(n));
  for (std::size_t s = 0; s < m; ++s) {
    a[s][s] += 1;
    for (const auto& [next, count] : moves[s]) {
      const Rational p = step * count;
      if (next.front() == next.back()) b[s][next.front()] += p;
      else a[s][index.at(next)] -= p;
    }
  }
  return solve_exact(std::move(a), std::move(b))[0];
}

double Histogram::mass() const {
  double total = 0.0;
  for (double d : density) total += d * width();
  return total;
}

Histogram one_step_winner_density(DensityKind kind, std::size_t n, std::size_t reps,
                                  std::size_t bins, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("one_step_winner_density: need n >= 3");
  if (bins < 1 || reps < 1) throw std::invalid_argument("one_step_winner_density: need bins, reps >= 1");
  std::vector<std::size_t> counts(bins, 0);
  std::vector<double> xs(n);
  for (std::size_t rep = 0; rep < reps; ++rep) {
    Rng rng = rng_stream(seed, rep);
    for (auto& x : xs) x = uniform_real(rng);
    const Population pop = generate_population(LineSpec{xs});
    // Three distinct participants: two candidates and a voter, or a triad.
    const std::size_t i = uniform_index(rng, n);
    std::size_t j = uniform_index(rng, n - 1);
    j += j >= i;
    std::size_t l = uniform_index(rng, n - 2);
    for (std::size_t taken : {std::min(i, j), std::max(i, j)}) l += l >= taken;
    ParticipantId winner = i;
    switch (kind) {
      case DensityKind::kTriadic: winner = truthful_winner({i, j, l}, pop); break;
      case DensityKind::kHotOrNot: winner = prefer(pop[l], pop[i], pop[j]).id; break;
      case DensityKind::kUniform: break;
    }
    const double x = pop.coordinate(winner);
    ++counts[std::min(bins - 1, static_cast<std::size_t>(x * static_cast<double>(bins)))];
  }
  Histogram hist;
  hist.samples = reps;
  hist.density.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    hist.density[b] = static_cast<double>(counts[b]) * static_cast<double>(bins) /
                      static_cast<double>(reps);
  }
  return hist;
}

double l1_distance(const Histogram& hist, DensityKind kind) {
  const double w = hist.width();
  double total = 0.0;
  for (std::size_t b = 0; b < hist.bins(); ++b) {
    const double lo = static_cast<double>(b) * w;
    const double hi = b + 1 == hist.bins() ? 1.0 : lo + w;
    const double exact = (cumulative_density(kind, hi) - cumulative_density(kind, lo)) / (hi - lo);
    total += std::abs(hist.density[b] - exact) * w;
  }
  return total;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += std::abs(p[i] - q[i]);
  return 0.5 * total;
}

}  // namespace triadic
