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

// Error correction by direct feedback: an ancilla register coupled to the
// data through a detect-and-correct Hamiltonian, with the ancillas
// continuously cooled back to |0>.
//
//   d rho / dt = gamma sum_q D[E_q (x) I_a] rho
//              + lambda sum_a D[I_d (x) S-_a] rho
//              - i kappa [H, rho]
//
// Data qubits come first in the tensor ordering, ancillas last.

#pragma once

#include <cstddef>

#include "cqec/code.hpp"
#include "cqec/fidelity_curve.hpp"
#include "cqec/master_equation.hpp"

namespace cqec {

struct DirectParams {
  double gamma = 0.05;   ///< bit-flip rate [Hz]
  double kappa = 1.0;    ///< Hamiltonian strength [Hz]
  double lambda = 2.5;   ///< ancilla cooling rate [Hz]
  double dt = 0.0;       ///< integration step [s]
  double t_max = 20.0;   ///< [s]

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

inline constexpr double kDefaultCoolingRatio = 2.5;

/// H = sum_s (C_s P_s) (x) |a_s><0...0| + h.c., over every syndrome s that
/// calls for a correction. P_s projects onto the data states with syndrome
/// s, C_s is its correction, and ancilla k of |a_s> is 1 exactly when
/// generator k reads -1. Each erred state (x) |0...0> is coupled only to its
/// corrected state (x) |a_s>, and codespace (x) |0...0> is dark.
struct DetectCorrectHamiltonian {
  ComplexMatrix matrix;
  MonomialOperator monomial;
  std::size_t data_qubits = 0;
  std::size_t ancilla_qubits = 0;
};

DetectCorrectHamiltonian build_direct_hamiltonian(const StabilizerCode& code);

/// Right-hand side above on (data + ancilla)-qubit density matrices.
Lindbladian build_direct_generator(const StabilizerCode& code,
                                   const DirectParams& params);

/// <psi0| tr_ancilla(rho) |psi0>, tracing out the trailing
/// `ancilla_qubits` tensor factors.
double encoded_fidelity(const ComplexMatrix& rho, const StateVector& psi0);
double encoded_fidelity(const DensityMatrix& rho, const StateVector& psi0);

/// |psi0><psi0| (x) |0...0><0...0|
DensityMatrix direct_initial_state(const StabilizerCode& code,
                                   const StateVector& psi0);

/// Deterministic RK4 solution sampled on a uniform grid; zero standard
/// error.
FidelityCurve run_direct(const StabilizerCode& code, const DirectParams& params,
                         const StateVector& psi0,
                         std::size_t grid_points = kDefaultGridPoints);

}  // namespace cqec
