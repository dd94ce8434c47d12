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

#include "triadic/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace triadic {

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt c = 1;
  for (unsigned i = 0; i < k; ++i) {
    c *= n - i;
    c /= i + 1;
  }
  return c;
}

std::vector<double> binomial_half_pmf(std::size_t m) {
  // Ratio recurrence outward from the mode, then normalise; no overflow for
  // large m and the tails underflow to zero cleanly.
  std::vector<double> pmf(m + 1, 0.0);
  const std::size_t mode = m / 2;
  pmf[mode] = 1.0;
  for (std::size_t i = mode; i < m; ++i) {
    pmf[i + 1] = pmf[i] * static_cast<double>(m - i) / static_cast<double>(i + 1);
  }
  for (std::size_t i = mode; i > 0; --i) {
    pmf[i - 1] = pmf[i] * static_cast<double>(i) / static_cast<double>(m - i + 1);
  }
  const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
  for (auto& p : pmf) p /= total;
  return pmf;
}

UrnFunction UrnFunction::triadic() {
  return {"triadic", [](double p) { return triadic_urn(p); }};
}

namespace {

// sum_{j=0}^{r-1} C(m, j) for r = 0..m+1.
std::vector<BigInt> binomial_prefix_sums(unsigned m) {
  std::vector<BigInt> prefix(m + 2);
  prefix[0] = 0;
  BigInt c = 1;
  for (unsigned j = 0; j <= m; ++j) {
    prefix[j + 1] = prefix[j] + c;
    c *= m - j;
    c /= j + 1;
  }
  return prefix;
}

BigInt pow2(std::size_t e) {
  BigInt p = 1;
  p <<= static_cast<unsigned>(e);
  return p;
}

}  // namespace

Rational absorption_prob_closed_exact(std::size_t n, std::size_t red0) {
  if (n < 1 || red0 > n) {
    throw std::invalid_argument("absorption_prob_closed: need 0 <= R0 <= n, n >= 1");
  }
  const auto prefix = binomial_prefix_sums(static_cast<unsigned>(n - 1));
  return Rational(prefix[red0], pow2(n - 1));
}

double absorption_prob_closed(std::size_t n, std::size_t red0) {
  return absorption_prob_closed_exact(n, red0).convert_to<double>();
}

std::vector<Rational> winner_distribution_exact(std::size_t n) {
  if (n < 1) throw std::invalid_argument("winner_distribution: n >= 1");
  const BigInt denom = pow2(n - 1);
  std::vector<Rational> law;
  law.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    law.emplace_back(binomial(static_cast<unsigned>(n - 1), static_cast<unsigned>(i)), denom);
  }
  return law;
}

Eigen::VectorXd winner_distribution(std::size_t n) {
  const auto exact = winner_distribution_exact(n);
  Eigen::VectorXd law(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) law(static_cast<Eigen::Index>(i)) = exact[i].convert_to<double>();
  return law;
}

Eigen::VectorXd winner_distribution(std::size_t n, std::size_t k) {
  if (n < 1 || k < 1) throw std::invalid_argument("winner_distribution: n, k >= 1");
  const std::size_t balls = n * k;
  const auto prefix = binomial_prefix_sums(static_cast<unsigned>(balls - 1));
  const BigInt denom = pow2(balls - 1);
  Eigen::VectorXd law(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Rational mass(prefix[k * (i + 1)] - prefix[k * i], denom);
    law(static_cast<Eigen::Index>(i)) = mass.convert_to<double>();
  }
  return law;
}

AbsorptionResult absorption_exact(const FixedUrnSpec& spec) {
  return absorption_exact<double>(spec.n, spec.red0, spec.f);
}

double time_bound(const FixedUrnSpec& spec) {
  const std::size_t n = spec.n;
  if (n < 2) throw std::invalid_argument("time_bound: n >= 2");
  const auto& f = spec.f;

  constexpr int kGrid = 1000;
  double previous = std::numeric_limits<double>::infinity();
  for (int g = 1; g < kGrid; ++g) {
    const double p = static_cast<double>(g) / kGrid;
    const double denom = f(1.0 - p);
    if (denom <= 0.0) continue;
    const double ratio = f(p) / denom;
    if (ratio > previous * (1.0 + 1e-12) + 1e-300) {
      throw std::domain_error("time_bound: f(p)/f(1-p) is not decreasing");
    }
    previous = ratio;
  }

  const double nd = static_cast<double>(n);
  auto q = [&](std::size_t k) { return f(static_cast<double>(k) / nd); };
  auto p = [&](std::size_t k) { return f(static_cast<double>(n - k) / nd); };
  if (q(1) <= 0.0) throw std::domain_error("time_bound: q_1 must be positive");
  double bound = 1.0 / q(1);
  for (std::size_t k = 1; k + 1 <= n / 2; ++k) {
    const double gap = q(k) - p(k);
    if (!(gap > 0.0)) throw std::domain_error("time_bound: requires q_k > p_k");
    bound += q(k) / (q(k + 1) * gap);
  }
  return bound;
}

std::vector<Rational> delta_win_prob_exact(std::size_t n, std::size_t l) {
  if (n < 4 || l < 1 || l + 2 > n) {
    throw std::invalid_argument("delta_win_prob: need n >= 4 and 1 <= l <= n-2");
  }
  const auto p = winner_distribution_exact(n);
  const auto q = winner_distribution_exact(n - 3);
  std::vector<Rational> delta(n);
  for (std::size_t i = 1; i <= n; ++i) {
    Rational in_q = 0;
    if (i <= l - 1) in_q = q[i - 1];
    else if (i >= l + 3) in_q = q[i - 4];
    delta[i - 1] = p[i - 1] - in_q;
  }
  return delta;
}

Eigen::VectorXd delta_win_prob(std::size_t n, std::size_t l) {
  const auto exact = delta_win_prob_exact(n, l);
  Eigen::VectorXd out(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) out(static_cast<Eigen::Index>(i)) = exact[i].convert_to<double>();
  return out;
}

// Comparisons against n/2 are done as 2i vs n to stay in integers.
bool delta_positive_as_stated(std::size_t n, std::size_t l, std::size_t i) {
  const bool above_left = i >= l || 2 * i >= n;       // i >= min(l, n/2)
  const bool below_right = i <= l + 2 || 2 * i <= n;  // i <= max(l+2, n/2)
  return above_left && below_right;
}

bool delta_positive_symmetric(std::size_t n, std::size_t l, std::size_t i) {
  const bool above_left = i >= l || 2 * i >= n;
  const bool below_right = i <= l + 2 || 2 * i <= n + 2;  // i <= max(l+2, n/2+1)
  return above_left && below_right;
}

DeltaSignReport check_delta_sign_pattern(std::size_t n_min, std::size_t n_max) {
  DeltaSignReport report;
  for (std::size_t n = std::max<std::size_t>(n_min, 4); n <= n_max; ++n) {
    for (std::size_t l = 1; l + 2 <= n; ++l) {
      const auto delta = delta_win_prob_exact(n, l);
      for (std::size_t i = 1; i <= n; ++i) {
        ++report.cases;
        const auto& d = delta[i - 1];
        if (d == 0) ++report.zero_entries;
        auto matches = [&](bool predicted_positive) {
          return predicted_positive ? d > 0 : d < 0;
        };
        if (!matches(delta_positive_as_stated(n, l, i))) {
          report.as_stated_mismatches.push_back({n, l, i, d});
        }
        if (!matches(delta_positive_symmetric(n, l, i))) {
          report.symmetric_mismatches.push_back({n, l, i, d});
        }
      }
    }
  }
  return report;
}

double cumulative_density(DensityKind kind, double x) {
  switch (kind) {
    case DensityKind::kTriadic: return 3.0 * x * x - 2.0 * x * x * x;
    case DensityKind::kHotOrNot: return 1.5 * x * x - x * x * x + 0.5 * x;
    case DensityKind::kUniform: return x;
  }
  return 0.0;
}

std::string to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::kTriadic: return "triadic";
    case DensityKind::kHotOrNot: return "hotornot";
    case DensityKind::kUniform: return "uniform";
  }
  return "?";
}

DensityKind parse_density_kind(const std::string& name) {
  if (name == "triadic") return DensityKind::kTriadic;
  if (name == "hotornot" || name == "hot-or-not") return DensityKind::kHotOrNot;
  if (name == "uniform") return DensityKind::kUniform;
  throw std::invalid_argument("unknown density kind '" + name + "' (triadic|hotornot|uniform)");
}

bool concave_ineq_check(const std::function<double(double)>& f, std::span<const double> c,
                        std::span<const double> d, std::span<const double> s1,
                        std::span<const double> s2, std::span<const double> t1,
                        std::span<const double> t2) {
  if (c.empty() || d.empty() || t1.size() != c.size() || t2.size() != c.size() ||
      s1.size() != d.size() || s2.size() != d.size()) {
    throw std::invalid_argument("concave_ineq_check: mismatched term counts");
  }
  const bool positive = c[0] > 0;
  auto same_sign = [&](double v) { return v != 0 && (v > 0) == positive; };
  if (!std::all_of(c.begin(), c.end(), same_sign) || !std::all_of(d.begin(), d.end(), same_sign)) {
    throw std::invalid_argument("concave_ineq_check: c and d must share one nonzero sign");
  }
  for (std::size_t i = 0; i < t1.size(); ++i) {
    if (!(t1[i] < t2[i])) throw std::invalid_argument("concave_ineq_check: need t1 < t2");
    for (std::size_t j = 0; j < s1.size(); ++j) {
      if (!(s1[j] <= t1[i]) || !(s2[j] <= t2[i])) {
        throw std::invalid_argument("concave_ineq_check: need s1 <= t1 and s2 <= t2");
      }
    }
  }
  for (std::size_t j = 0; j < s1.size(); ++j) {
    if (!(s1[j] < s2[j])) throw std::invalid_argument("concave_ineq_check: need s1 < s2");
  }

  double ft = 0, fs = 0, lt = 0, ls = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    ft += c[i] * (f(t2[i]) - f(t1[i]));
    lt += c[i] * (t2[i] - t1[i]);
  }
  for (std::size_t j = 0; j < d.size(); ++j) {
    fs += d[j] * (f(s2[j]) - f(s1[j]));
    ls += d[j] * (s2[j] - s1[j]);
  }
  if (fs == 0.0 || ft == 0.0) {
    throw std::invalid_argument("concave_ineq_check: f is flat on a bracket; ratio undefined");
  }
  auto slack = [](double a, double b) { return 1e-12 * (1.0 + std::abs(a) + std::abs(b)); };

  const double lhs1 = ft / fs, rhs1 = lt / ls;
  // Reciprocal form: multiply top and bottom by -1.
  const double lhs2 = (-fs) / (-ft), rhs2 = (-ls) / (-lt);
  return lhs1 >= rhs1 - slack(lhs1, rhs1) && lhs2 <= rhs2 + slack(lhs2, rhs2);
}

void write_oracle_table_csv(std::ostream& os, std::size_t n_min, std::size_t n_max) {
  os << "n,R0,p_closed,p_exact,etime_exact,etime_bound\n";
  const auto old_precision = os.precision(17);
  for (std::size_t n = std::max<std::size_t>(n_min, 2); n <= n_max; ++n) {
    const double bound = time_bound({n, n / 2, UrnFunction::triadic()});
    for (std::size_t r0 = 0; r0 <= n; ++r0) {
      const auto exact = absorption_exact<double>(n, r0, triadic_urn<double>);
      os << n << ',' << r0 << ',' << absorption_prob_closed(n, r0) << ',' << exact.p_red_wins
         << ',' << exact.expected_time << ',' << bound << '\n';
    }
  }
  os.precision(old_precision);
}

}  // namespace triadic
