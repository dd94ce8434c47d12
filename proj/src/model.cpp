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

#include "triadic/model.hpp"

#include <algorithm>
#include <numbers>

#include "triadic/rng.hpp"

namespace triadic {

Point make_point(double x) {
  Point p(1);
  p << x;
  return p;
}

Point make_point(double x, double y) {
  Point p(2);
  p << x, y;
  return p;
}

UtilityShape UtilityShape::power(double alpha) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("UtilityShape::power: alpha must be >= 1");
  }
  return UtilityShape(Kind::kPower, alpha);
}

std::ostream& operator<<(std::ostream& os, const UtilityShape& shape) {
  if (shape.kind() == UtilityShape::Kind::kLinear) return os << "linear";
  return os << "power(" << shape.alpha() << ")";
}

Population::Population(std::vector<Participant> participants, SpaceKind space)
    : participants_(std::move(participants)), space_(space), dimension_(0) {
  if (participants_.empty()) {
    throw std::invalid_argument("Population: no participants");
  }
  dimension_ = participants_.front().dimension();
  if (dimension_ != 1 && dimension_ != 2) {
    throw std::invalid_argument("Population: dimension must be 1 or 2");
  }
  for (std::size_t i = 0; i < participants_.size(); ++i) {
    const auto& p = participants_[i];
    if (p.dimension() != dimension_) {
      throw std::invalid_argument("Population: mixed dimensions");
    }
    if (!p.point.allFinite()) {
      throw std::invalid_argument("Population: non-finite coordinate");
    }
    if (p.id != i) {
      throw std::invalid_argument("Population: ids must be contiguous from 0");
    }
    if (dimension_ == 1 && i > 0 && p.point(0) < participants_[i - 1].point(0)) {
      throw std::invalid_argument("Population: 1-D participants must be sorted");
    }
  }
}

Population Population::with_utility(const UtilityShape& shape) const {
  return with_utilities(std::vector<UtilityShape>(size(), shape));
}

Population Population::with_utilities(const std::vector<UtilityShape>& shapes) const {
  if (shapes.size() != size()) {
    throw std::invalid_argument("with_utilities: one shape per participant");
  }
  auto copy = participants_;
  for (std::size_t i = 0; i < copy.size(); ++i) copy[i].utility = shapes[i];
  return Population(std::move(copy), space_);
}

namespace {

Population line_from(std::vector<double> positions, SpaceKind space,
                     const UtilityShape& utility) {
  if (positions.empty()) {
    throw std::invalid_argument("generate_population: empty position list");
  }
  std::sort(positions.begin(), positions.end());
  std::vector<Participant> ps;
  ps.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    ps.push_back({i, make_point(positions[i]), utility});
  }
  return Population(std::move(ps), space);
}

}  // namespace

Population generate_population(const PopulationSpec& spec, const UtilityShape& utility) {
  return std::visit(
      [&](const auto& s) -> Population {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, LineSpec>) {
          return line_from(s.positions, SpaceKind::kLine, utility);
        } else if constexpr (std::is_same_v<S, GridSpec>) {
          if (s.m < 1) throw std::invalid_argument("generate_population: m >= 1");
          std::vector<Participant> ps;
          ps.reserve(s.m * s.m);
          for (std::size_t x = 0; x < s.m; ++x) {
            for (std::size_t y = 0; y < s.m; ++y) {
              ps.push_back({ps.size(),
                            make_point(static_cast<double>(x), static_cast<double>(y)),
                            utility});
            }
          }
          return Population(std::move(ps), SpaceKind::kGrid);
        } else if constexpr (std::is_same_v<S, CircleSpec>) {
          if (s.n < 1) throw std::invalid_argument("generate_population: n >= 1");
          std::vector<Participant> ps;
          ps.reserve(s.n + 1);
          for (std::size_t k = 0; k < s.n; ++k) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) /
                                 static_cast<double>(s.n);
            ps.push_back({k, make_point(std::cos(angle), std::sin(angle)), utility});
          }
          ps.push_back({s.n, make_point(0.0, 0.0), utility});
          return Population(std::move(ps), SpaceKind::kCircleWithCenter);
        } else {
          if (s.n < 1) throw std::invalid_argument("generate_population: n >= 1");
          Rng rng = rng_stream(s.seed, 0);
          std::vector<double> xs(s.n);
          for (auto& x : xs) x = uniform_real(rng);
          return line_from(std::move(xs), SpaceKind::kUniformLine, utility);
        }
      },
      spec);
}

Population equally_spaced_line(std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<double>(i);
  return generate_population(LineSpec{std::move(xs)});
}

double distance(const Participant& a, const Participant& b) {
  return distance(a.point, b.point);
}

const Participant& prefer(const Participant& voter, const Participant& y,
                          const Participant& z) {
  if (y.id == z.id) throw std::invalid_argument("prefer: candidates must differ");
  const double dy = distance(voter, y);
  const double dz = distance(voter, z);
  if (dy < dz) return y;
  if (dz < dy) return z;
  return y.id < z.id ? y : z;
}

double utility_of(const Participant& x, const Participant& y) {
  return x.utility(distance(x, y));
}

std::optional<ParticipantId> condorcet_winner(const Population& pop) {
  const std::size_t n = pop.size();
  if (n == 1) return 0;
  for (ParticipantId a = 0; a < n; ++a) {
    bool beats_all = true;
    for (ParticipantId b = 0; b < n && beats_all; ++b) {
      if (a == b) continue;
      std::size_t for_a = 0;
      for (const auto& voter : pop) {
        if (prefer(voter, pop[a], pop[b]).id == a) ++for_a;
      }
      beats_all = 2 * for_a > n;
    }
    if (beats_all) return a;
  }
  return std::nullopt;
}

void write_population_csv(std::ostream& os, const Population& pop) {
  os << (pop.dimension() == 1 ? "id,x\n" : "id,x,y\n");
  const auto old_precision = os.precision(17);
  for (const auto& p : pop) {
    os << p.id << ',' << p.point(0);
    if (pop.dimension() == 2) os << ',' << p.point(1);
    os << '\n';
  }
  os.precision(old_precision);
}

}  // namespace triadic
