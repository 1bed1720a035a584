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

// Reference runs without error correction, used for the dashed comparison
// curves.

#pragma once

#include <functional>

#include "cqec/code.hpp"
#include "cqec/fidelity_curve.hpp"
#include "cqec/master_equation.hpp"

namespace cqec {

using FidelityProbe = std::function<double(const DensityMatrix&)>;

/// Integrates `gen` with RK4 on the grid's step and samples `probe` at every
/// grid point.
FidelityCurve sample_deterministic(const DeterministicGenerator& gen,
                                   DensityMatrix rho0, const OutputGrid& grid,
                                   const FidelityProbe& probe);

/// One physical qubit, d rho/dt = gamma D[X] rho, from alpha|0> + beta|1>.
FidelityCurve run_baseline_single(double gamma, double dt, double t_max,
                                  Complex alpha, Complex beta,
                                  std::size_t grid_points = kDefaultGridPoints);

/// The encoded state under the code's error channel with no correction.
FidelityCurve run_unprotected(const StabilizerCode& code, double gamma,
                              double dt, double t_max, const StateVector& psi0,
                              std::size_t grid_points = kDefaultGridPoints);

}  // namespace cqec
