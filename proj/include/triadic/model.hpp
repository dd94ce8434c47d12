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

#ifndef TRIADIC_MODEL_HPP_
#define TRIADIC_MODEL_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace triadic {

using ParticipantId = std::size_t;

// A location in a 1-D or 2-D preference space. Storage is inline (at most two
// coordinates), so points never allocate.
template <typename Scalar>
using PointT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, 2, 1>;
using Point = PointT<double>;

Point make_point(double x);
Point make_point(double x, double y);

// Euclidean distance. Throws std::invalid_argument on a dimension mismatch.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar distance(const Eigen::MatrixBase<DerivedA>& a,
                                   const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("distance: dimension mismatch");
  }
  return (a - b).norm();
}

// Concave, non-increasing map from distance to utility. f(0) = 0 is the
// maximum for both shapes.
class UtilityShape {
 public:
  enum class Kind { kLinear, kPower };

  static UtilityShape linear() { return UtilityShape(Kind::kLinear, 1.0); }
  // alpha >= 1 keeps -d^alpha concave on d >= 0.
  static UtilityShape power(double alpha);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }

  template <typename Scalar>
  Scalar operator()(Scalar d) const {
    using std::pow;
    return kind_ == Kind::kLinear ? -d : -pow(d, Scalar(alpha_));
  }

 private:
  UtilityShape(Kind kind, double alpha) : kind_(kind), alpha_(alpha) {}

  Kind kind_;
  double alpha_;
};

std::ostream& operator<<(std::ostream& os, const UtilityShape& shape);

struct Participant {
  ParticipantId id = 0;
  Point point;
  UtilityShape utility = UtilityShape::linear();

  int dimension() const { return static_cast<int>(point.size()); }
};

enum class SpaceKind { kLine, kGrid, kCircleWithCenter, kUniformLine };

// Participants with ids 0..n-1 in storage order. One-dimensional populations
// are kept sorted by coordinate, so an id is also the rank on the axis.
class Population {
 public:
  Population(std::vector<Participant> participants, SpaceKind space);

  std::size_t size() const { return participants_.size(); }
  int dimension() const { return dimension_; }
  bool one_dimensional() const { return dimension_ == 1; }
  SpaceKind space() const { return space_; }

  const Participant& operator[](ParticipantId id) const {
    return participants_[id];
  }
  const std::vector<Participant>& participants() const {
    return participants_;
  }
  auto begin() const { return participants_.begin(); }
  auto end() const { return participants_.end(); }

  // Axis coordinate; only meaningful for one-dimensional populations.
  double coordinate(ParticipantId id) const { return participants_[id].point(0); }

  // Same positions, every participant using `shape`.
  Population with_utility(const UtilityShape& shape) const;
  Population with_utilities(const std::vector<UtilityShape>& shapes) const;

 private:
  std::vector<Participant> participants_;
  SpaceKind space_;
  int dimension_;
};

struct LineSpec {
  std::vector<double> positions;
};
struct GridSpec {
  std::size_t m = 1;
};
struct CircleSpec {
  std::size_t n = 1;  // perimeter participants; one more sits at the origin
};
struct UniformLineSpec {
  std::size_t n = 1;
  std::uint64_t seed = 0;
};
using PopulationSpec = std::variant<LineSpec, GridSpec, CircleSpec, UniformLineSpec>;

Population generate_population(const PopulationSpec& spec,
                               const UtilityShape& utility = UtilityShape::linear());

// n participants at 0, 1, ..., n-1.
Population equally_spaced_line(std::size_t n);

double distance(const Participant& a, const Participant& b);

// The strictly closer of y and z as seen from voter; equal distances go to
// the lower id. Throws std::invalid_argument when y and z are the same id.
const Participant& prefer(const Participant& voter, const Participant& y,
                          const Participant& z);

double utility_of(const Participant& x, const Participant& y);

// Brute force over all pairs: the id that beats every other id by a strict
// majority of all n voters, if any.
std::optional<ParticipantId> condorcet_winner(const Population& pop);

// `id,x[,y]`, one row per participant.
void write_population_csv(std::ostream& os, const Population& pop);

}  // namespace triadic

#endif  // TRIADIC_MODEL_HPP_
