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

#include "cqec/fidelity_curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cqec {

OutputGrid::OutputGrid(double t_max, double dt, std::size_t points) : dt_(dt) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw std::invalid_argument("t_max must be positive");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("dt must be positive");
  }
  if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
  const double n = std::ceil(t_max / dt - 1e-9);
  if (n < static_cast<double>(points - 1)) {
    throw std::invalid_argument(
        "dt too coarse: " + std::to_string(static_cast<long long>(n)) +
        " steps cannot fill " + std::to_string(points) + " grid points");
  }
  steps_ = static_cast<std::size_t>(n);
  times_.resize(points);
  sample_steps_.resize(points);
  fractions_.resize(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) {
    times_[k] = t_max * static_cast<double>(k) / last;
    const double x = times_[k] / dt;
    const double step = std::min(std::floor(x + 1e-9), n);
    sample_steps_[k] = static_cast<std::size_t>(step);
    const double frac = x - step;
    fractions_[k] = frac > 1e-9 ? frac : 0.0;
  }
}

double pairwise_sum(std::span<const double> values, std::size_t n,
                    std::size_t stride) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += values[i * stride];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values, half, stride) +
         pairwise_sum(values.subspan(half * stride), n - half, stride);
}

FidelityCurve reduce_ensemble(std::span<const double> samples,
                              std::size_t trajectories,
                              std::span<const double> times) {
  const std::size_t points = times.size();
  if (trajectories == 0 || samples.size() != trajectories * points) {
    throw std::invalid_argument("reduce_ensemble: sample count mismatch");
  }
  FidelityCurve c;
  c.times.assign(times.begin(), times.end());
  c.mean.resize(points);
  c.std_error.assign(points, 0.0);
  c.trajectories = trajectories;
  const double n = static_cast<double>(trajectories);
  std::vector<double> dev(trajectories);
  for (std::size_t k = 0; k < points; ++k) {
    const double m = pairwise_sum(samples.subspan(k), trajectories, points) / n;
    c.mean[k] = m;
    if (trajectories > 1) {
      for (std::size_t t = 0; t < trajectories; ++t) {
        const double d = samples[t * points + k] - m;
        dev[t] = d * d;
      }
      const double var = pairwise_sum(dev, trajectories) / (n - 1.0);
      c.std_error[k] = std::sqrt(var / n);
    }
  }
  return c;
}

double single_qubit_flip_fidelity(double gamma, double t) {
  return 0.5 * (1.0 + std::exp(-2.0 * gamma * t));
}

double unprotected_three_qubit_fidelity(double gamma, double t) {
  const double f = single_qubit_flip_fidelity(gamma, t);
  return f * f * f;
}

}  // namespace cqec
