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

// Analytic ground truth for the urn protocol: the absorption law of the
// fixed-size recolouring urn in closed form and by direct linear solve, the
// hitting-time bound, winner-law differences between relabelled and
// shrunken urns, and the one-step winner densities.

#ifndef TRIADIC_ORACLE_HPP_
#define TRIADIC_ORACLE_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace triadic {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(unsigned n, unsigned k);

// C(m, i) / 2^m for i = 0..m, in double. Exact-ratio recurrence while the
// coefficients fit, log-gamma beyond.
std::vector<double> binomial_half_pmf(std::size_t m);

// f : [0,1] -> [0,1], the probability that a red ball is drawn and recoloured
// when a fraction p of the urn is red.
struct UrnFunction {
  std::string name;
  std::function<double(double)> f;

  double operator()(double p) const { return f(p); }

  // f(p) = 3p(1-p)^2: a triad with one red and two blue balls.
  static UrnFunction triadic();
};

template <typename Scalar>
Scalar triadic_urn(Scalar p) {
  return Scalar(3) * p * (Scalar(1) - p) * (Scalar(1) - p);
}

struct FixedUrnSpec {
  std::size_t n = 1;     // total balls
  std::size_t red0 = 0;  // initial red balls
  UrnFunction f = UrnFunction::triadic();
};

template <typename Scalar>
struct AbsorptionResultT {
  Scalar p_red_wins{};
  Scalar expected_time{};
};
using AbsorptionResult = AbsorptionResultT<double>;

// P[all red] for the triadic urn: 2^-(n-1) * sum_{j=1}^{R0} C(n-1, j-1).
Rational absorption_prob_closed_exact(std::size_t n, std::size_t red0);
double absorption_prob_closed(std::size_t n, std::size_t red0);

// Winner law over sorted participants 0..n-1: C(n-1, i) / 2^(n-1).
std::vector<Rational> winner_distribution_exact(std::size_t n);
Eigen::VectorXd winner_distribution(std::size_t n);

// Winner law when every one of n participants starts with k balls:
// P[w <= i] = P[red absorbs | k(i+1) red of kn].
Eigen::VectorXd winner_distribution(std::size_t n, std::size_t k);

inline constexpr std::size_t kMaxDenseUrn = 2048;

// Absorption probability and expected hitting time of {0, n} from red0,
// solved directly from the one-step equations over the interior states.
// Every tick counts, including ticks where nothing is recoloured.
template <typename Scalar, typename F>
AbsorptionResultT<Scalar> absorption_exact(std::size_t n, std::size_t red0, F&& f) {
  if (n < 1 || red0 > n) throw std::invalid_argument("absorption_exact: need 0 <= R0 <= n, n >= 1");
  if (n > kMaxDenseUrn) throw std::invalid_argument("absorption_exact: n exceeds dense cap");
  if (red0 == 0) return {Scalar(0), Scalar(0)};
  if (red0 == n) return {Scalar(1), Scalar(0)};

  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index m = static_cast<Eigen::Index>(n) - 1;  // states 1..n-1
  Matrix a = Matrix::Zero(m, m);
  Vector prob_rhs = Vector::Zero(m);
  Vector time_rhs = Vector::Ones(m);
  for (Eigen::Index s = 0; s < m; ++s) {
    const Scalar p = Scalar(s + 1) / Scalar(n);
    const Scalar down = f(p);               // a red ball turns blue
    const Scalar up = f(Scalar(1) - p);     // a blue ball turns red
    if (down + up == Scalar(0)) {
      throw std::domain_error("absorption_exact: singular system (f vanishes on an interior state)");
    }
    a(s, s) = down + up;
    if (s > 0) a(s, s - 1) = -down;
    if (s + 1 < m) a(s, s + 1) = -up;
    else prob_rhs(s) = up;
  }
  const Eigen::PartialPivLU<Matrix> lu(a);
  const Vector prob = lu.solve(prob_rhs);
  const Vector time = lu.solve(time_rhs);
  const auto at = static_cast<Eigen::Index>(red0) - 1;
  return {prob(at), time(at)};
}

AbsorptionResult absorption_exact(const FixedUrnSpec& spec);

// 1/q_1 + sum_{k=1}^{floor(n/2)-1} q_k / (q_{k+1} (q_k - p_k)), with
// q_k = f(k/n) and p_k = f((n-k)/n). Requires f(p)/f(1-p) decreasing (checked
// on a grid) and q_k > p_k on every summed k; throws std::domain_error if not.
double time_bound(const FixedUrnSpec& spec);

// Per-ball change in winning probability between P (n balls) and Q (n-3
// balls, P without the three at 1-based indices l, l+1, l+2).
std::vector<Rational> delta_win_prob_exact(std::size_t n, std::size_t l);
Eigen::VectorXd delta_win_prob(std::size_t n, std::size_t l);

// Interval where the change is positive, 1-based and inclusive.
// As stated: min(l, n/2) <= i <= max(l+2, n/2).
bool delta_positive_as_stated(std::size_t n, std::size_t l, std::size_t i);
// Mirror-consistent: the right bound is the reflection i -> n+1-i of the left
// one, max(l+2, n/2+1).
bool delta_positive_symmetric(std::size_t n, std::size_t l, std::size_t i);

struct SignMismatch {
  std::size_t n = 0;
  std::size_t l = 0;
  std::size_t i = 0;
  Rational delta;
};

struct DeltaSignReport {
  std::size_t cases = 0;            // (n, l, i) triples examined
  std::size_t zero_entries = 0;     // exact zeros, which neither predicate allows
  std::vector<SignMismatch> as_stated_mismatches;
  std::vector<SignMismatch> symmetric_mismatches;
};

DeltaSignReport check_delta_sign_pattern(std::size_t n_min, std::size_t n_max);

enum class DensityKind { kTriadic, kHotOrNot, kUniform };

// One-step winner density on uniform [0,1] participants.
template <typename Scalar>
Scalar density(DensityKind kind, Scalar x) {
  if (x < Scalar(0) || x > Scalar(1)) throw std::domain_error("density: x outside [0,1]");
  switch (kind) {
    case DensityKind::kTriadic: return Scalar(6) * x * (Scalar(1) - x);
    case DensityKind::kHotOrNot: return Scalar(3) * x * (Scalar(1) - x) + Scalar(0.5);
    case DensityKind::kUniform: return Scalar(1);
  }
  return Scalar(0);
}

// Antiderivative of density(kind, .) with value 0 at x = 0.
double cumulative_density(DensityKind kind, double x);

std::string to_string(DensityKind kind);
DensityKind parse_density_kind(const std::string& name);

// Checks the two ratio inequalities for a concave, non-increasing f:
//   sum c_i[f(t2_i)-f(t1_i)] / sum d_j[f(s2_j)-f(s1_j)]
//       >= sum c_i[t2_i-t1_i] / sum d_j[s2_j-s1_j]
// and its reciprocal with signs flipped,
//   sum d_j[f(s1_j)-f(s2_j)] / sum c_i[f(t1_i)-f(t2_i)]
//       <= sum d_j[s1_j-s2_j] / sum c_i[t1_i-t2_i].
// Throws std::invalid_argument when the orderings (s1_j <= t1_i,
// s2_j <= t2_i, s1 < s2, t1 < t2), the common sign of c and d, or nonzero
// denominators fail; a false return is a genuine counterexample.
bool concave_ineq_check(const std::function<double(double)>& f, std::span<const double> c,
                        std::span<const double> d, std::span<const double> s1,
                        std::span<const double> s2, std::span<const double> t1,
                        std::span<const double> t2);

// `n,R0,p_closed,p_exact,etime_exact,etime_bound` for every R0 of every n in
// [n_min, n_max].
void write_oracle_table_csv(std::ostream& os, std::size_t n_min, std::size_t n_max);

}  // namespace triadic

#endif  // TRIADIC_ORACLE_HPP_
