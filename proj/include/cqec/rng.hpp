// Copyright 2026 The cqec-sim Authors
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

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace cqec {

/// Reproducible random stream: xoshiro256** 1.0 with its state expanded from
/// a 64-bit seed by SplitMix64, Gaussians by the Box-Muller transform.
///
/// The standard library distributions are avoided on purpose: their output
/// is implementation-defined, and ensembles must replay bit-for-bit from a
/// seed. Residual platform dependence is limited to std::log / std::cos.
class RngStream {
 public:
  static constexpr std::string_view kAlgorithm =
      "xoshiro256** 1.0 / splitmix64 seeding / Box-Muller";

  explicit RngStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();
  /// Uniform on (0, 1], 53-bit resolution.
  double uniform_open0();
  double standard_normal();

  /// Seed for trajectory `index` of an ensemble.
  static std::uint64_t trajectory_seed(std::uint64_t base_seed,
                                       std::uint64_t index) {
    return base_seed ^ index;
  }

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> s_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Fills `out` with independent N(0, dt) samples. Throws
/// std::invalid_argument for dt <= 0.
void wiener_increments(RngStream& rng, double dt, std::span<double> out);
std::vector<double> wiener_increments(RngStream& rng, std::size_t k,
                                      double dt);

}  // namespace cqec
