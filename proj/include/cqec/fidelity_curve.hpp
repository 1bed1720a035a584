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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cqec {

inline constexpr std::size_t kDefaultGridPoints = 200;

/// Uniform output grid over [0, t_max], decimated from the integration steps.
/// Grid point k sits at time t_k = k t_max / (points - 1). Integration runs
/// ceil(t_max / dt) steps; a grid time that falls between steps is reached by
/// a partial step (deterministic runs) or linear interpolation (trajectories).
class OutputGrid {
 public:
  /// Throws std::invalid_argument unless t_max > 0, dt > 0, points >= 2 and
  /// there are at least points - 1 integration steps.
  OutputGrid(double t_max, double dt, std::size_t points = kDefaultGridPoints);

  std::size_t points() const { return times_.size(); }
  std::size_t steps() const { return steps_; }
  double dt() const { return dt_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<std::size_t>& sample_steps() const { return sample_steps_; }
  /// Sample k lies fractions()[k] * dt past step sample_steps()[k]; the
  /// fraction is in [0, 1) and exactly 0 when the sample falls on a step.
  const std::vector<double>& fractions() const { return fractions_; }

 private:
  std::size_t steps_;
  double dt_;
  std::vector<double> times_;
  std::vector<std::size_t> sample_steps_;
  std::vector<double> fractions_;
};

/// Mean fidelity and its standard error on an output grid. Deterministic
/// runs report zero standard error.
struct FidelityCurve {
  std::vector<double> times;
  std::vector<double> mean;
  std::vector<double> std_error;
  std::size_t trajectories = 1;
  std::uint64_t base_seed = 0;
};

/// Ensemble statistics over row-major samples[traj * points + k]. Sums are
/// pairwise in trajectory-index order, so the result depends only on the
/// sample values, not on how trajectories were scheduled.
FidelityCurve reduce_ensemble(std::span<const double> samples,
                              std::size_t trajectories,
                              std::span<const double> times);

/// Pairwise (cascade) sum of `values[i * stride]`, i in [0, n).
double pairwise_sum(std::span<const double> values, std::size_t n,
                    std::size_t stride = 1);

/// Single qubit under rate-gamma bit flips, from |0>: (1 + e^{-2 gamma t}) / 2.
double single_qubit_flip_fidelity(double gamma, double t);

/// Three independent flip channels from |000>.
double unprotected_three_qubit_fidelity(double gamma, double t);

}  // namespace cqec
