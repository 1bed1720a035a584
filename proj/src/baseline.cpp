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

#include "cqec/baseline.hpp"

#include <cmath>
#include <stdexcept>

namespace cqec {

FidelityCurve sample_deterministic(const DeterministicGenerator& gen,
                                   DensityMatrix rho0, const OutputGrid& grid,
                                   const FidelityProbe& probe) {
  FidelityCurve curve;
  curve.times = grid.times();
  curve.mean.resize(grid.points());
  curve.std_error.assign(grid.points(), 0.0);
  const auto& at = grid.sample_steps();
  const auto& frac = grid.fractions();
  std::size_t next = 0;
  auto take = [&](std::size_t step, const DensityMatrix& rho) {
    for (; next < at.size() && at[next] == step; ++next) {
      curve.mean[next] = frac[next] == 0.0
                             ? probe(rho)
                             : probe(rk4_step(gen, rho, frac[next] * grid.dt()));
    }
  };
  take(0, rho0);
  integrate(gen, std::move(rho0), grid.dt(), grid.steps(), take);
  return curve;
}

FidelityCurve run_baseline_single(double gamma, double dt, double t_max,
                                  Complex alpha, Complex beta,
                                  std::size_t grid_points) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw std::invalid_argument("gamma must be a finite rate >= 0");
  }
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-9) {
    throw std::invalid_argument("|alpha|^2 + |beta|^2 must be 1");
  }
  Lindbladian gen(2);
  gen.add_dissipator(gamma, MonomialOperator::from_pauli(PauliString::parse("X")));
  StateVector psi(2);
  psi << alpha, beta;
  return sample_deterministic(
      gen,
      DensityMatrix::from_pure(psi), OutputGrid(t_max, dt, grid_points),
      [&psi](const DensityMatrix& rho) { return fidelity(psi, rho); });
}

FidelityCurve run_unprotected(const StabilizerCode& code, double gamma,
                              double dt, double t_max, const StateVector& psi0,
                              std::size_t grid_points) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw std::invalid_argument("gamma must be a finite rate >= 0");
  }
  Lindbladian gen(code.dim());
  for (const auto& e : code.error_operators()) {
    gen.add_dissipator(gamma, MonomialOperator::from_pauli(e));
  }
  return sample_deterministic(
      gen,
      DensityMatrix::from_pure(psi0), OutputGrid(t_max, dt, grid_points),
      [&psi0](const DensityMatrix& rho) { return fidelity(psi0, rho); });
}

}  // namespace cqec
