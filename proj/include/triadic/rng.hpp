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

#ifndef TRIADIC_RNG_HPP_
#define TRIADIC_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>

namespace triadic {

// Every run owns one of these. 64-bit Mersenne Twister, seeded per stream.
using Rng = std::mt19937_64;

// Stream for replication `replication` of an experiment keyed by
// `master_seed`. Both words are passed through SplitMix64 and expanded with
// std::seed_seq, so neighbouring indices give unrelated streams.
Rng rng_stream(std::uint64_t master_seed, std::uint64_t replication);

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline double uniform_real(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace triadic

#endif  // TRIADIC_RNG_HPP_
