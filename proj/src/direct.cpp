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

#include "cqec/direct.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cqec/baseline.hpp"

namespace cqec {

namespace {

void require_rate(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument(std::string(name) + " must be a finite rate >= 0");
  }
}

PauliString identity(std::size_t n) {
  return PauliString(std::vector<PauliFactor>(n, PauliFactor::I));
}

}  // namespace

void DirectParams::validate() const {
  require_rate(gamma, "gamma");
  require_rate(kappa, "kappa");
  require_rate(lambda, "lambda");
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("dt must be positive");
  }
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw std::invalid_argument("t_max must be positive");
  }
}

DetectCorrectHamiltonian build_direct_hamiltonian(const StabilizerCode& code) {
  const std::size_t nd = code.data_qubits();
  const std::size_t na = code.generators().size();
  const auto da = static_cast<Eigen::Index>(std::size_t{1} << na);

  ComplexMatrix h = ComplexMatrix::Zero(static_cast<Eigen::Index>(code.dim()) * da,
                                        static_cast<Eigen::Index>(code.dim()) * da);
  for (const auto& s : code.syndromes()) {
    const auto idx = code.correction_index(s);
    if (!idx) continue;
    Eigen::Index label = 0;
    for (Sign k : s) label = (label << 1) | (k == Sign::Minus ? 1 : 0);
    ComplexMatrix raise = ComplexMatrix::Zero(da, da);
    raise(label, 0) = 1.0;  // |a_s><0...0|
    const ComplexMatrix fix =
        compile(code.correction_operators()[*idx]) * code.syndrome_projector(s);
    const ComplexMatrix term = kron(fix, raise);
    h += term + term.adjoint();
  }

  auto mono = MonomialOperator::from_dense(h);
  if (!mono) {
    throw std::logic_error("detect-correct Hamiltonian is not monomial for this code");
  }
  return {std::move(h), std::move(*mono), nd, na};
}

Lindbladian build_direct_generator(const StabilizerCode& code,
                                   const DirectParams& params) {
  params.validate();
  const std::size_t na = code.generators().size();
  const DetectCorrectHamiltonian h = build_direct_hamiltonian(code);
  Lindbladian gen(code.dim() << na);
  const PauliString ancilla_id = identity(na);
  for (const auto& e : code.error_operators()) {
    gen.add_dissipator(params.gamma, MonomialOperator::from_pauli(e + ancilla_id));
  }
  const PauliString data_id = identity(code.data_qubits());
  for (std::size_t a = 0; a < na; ++a) {
    gen.add_dissipator(params.lambda,
                       MonomialOperator::from_pauli(
                           data_id + PauliString::single(na, a, PauliFactor::Sminus)));
  }
  gen.add_hamiltonian(params.kappa, h.monomial);
  return gen;
}

double encoded_fidelity(const ComplexMatrix& rho, const StateVector& psi0) {
  const auto dd = psi0.size();
  if (rho.rows() != rho.cols() || dd == 0 || rho.rows() % dd != 0 ||
      !is_power_of_two_dim(static_cast<std::size_t>(rho.rows() / dd))) {
    throw DimensionError("encoded_fidelity: state of dimension " +
                         std::to_string(rho.rows()) +
                         " does not factor as data (" + std::to_string(dd) +
                         ") x ancilla");
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("encoded_fidelity: reference state not normalized");
  }
  const Eigen::Index da = rho.rows() / dd;
  // Data index is the high part of the basis index: (d, a) -> d * da + a.
  ComplexMatrix reduced = ComplexMatrix::Zero(dd, dd);
  for (Eigen::Index i = 0; i < dd; ++i) {
    for (Eigen::Index j = 0; j < dd; ++j) {
      Complex s = 0.0;
      for (Eigen::Index a = 0; a < da; ++a) s += rho(i * da + a, j * da + a);
      reduced(i, j) = s;
    }
  }
  return fidelity(psi0, reduced);
}

double encoded_fidelity(const DensityMatrix& rho, const StateVector& psi0) {
  return encoded_fidelity(rho.matrix(), psi0);
}

DensityMatrix direct_initial_state(const StabilizerCode& code,
                                   const StateVector& psi0) {
  if (static_cast<std::size_t>(psi0.size()) != code.dim()) {
    throw DimensionError("initial state dimension does not match the code");
  }
  const std::size_t da = std::size_t{1} << code.generators().size();
  StateVector full = StateVector::Zero(psi0.size() * static_cast<Eigen::Index>(da));
  for (Eigen::Index d = 0; d < psi0.size(); ++d) {
    full(d * static_cast<Eigen::Index>(da)) = psi0(d);
  }
  return DensityMatrix::from_pure(full);
}

FidelityCurve run_direct(const StabilizerCode& code, const DirectParams& params,
                         const StateVector& psi0, std::size_t grid_points) {
  const Lindbladian gen = build_direct_generator(code, params);
  return sample_deterministic(
      gen,
      direct_initial_state(code, psi0), OutputGrid(params.t_max, params.dt, grid_points),
      [&psi0](const DensityMatrix& rho) { return encoded_fidelity(rho, psi0); });
}

}  // namespace cqec
