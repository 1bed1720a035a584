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

#include "cqec/master_equation.hpp"

#include <stdexcept>

namespace cqec {

Lindbladian::Lindbladian(std::size_t dim)
    : dim_(dim), decay_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim))) {
  qubit_count(dim);
}

void Lindbladian::add_hamiltonian(double strength, MonomialOperator h) {
  if (h.dim() != dim_) throw DimensionError("add_hamiltonian: dimension mismatch");
  if (!is_hermitian(h.to_dense(), 1e-14)) {
    throw std::invalid_argument("add_hamiltonian: operator is not Hermitian");
  }
  hamiltonians_.push_back({strength, std::move(h)});
}

void Lindbladian::add_dissipator(double rate, MonomialOperator l) {
  if (l.dim() != dim_) throw DimensionError("add_dissipator: dimension mismatch");
  decay_ += rate * l.gram_diagonal();
  dissipators_.push_back({rate, std::move(l)});
}

void Lindbladian::apply(const ComplexMatrix& rho, ComplexMatrix& out) const {
  const auto n = static_cast<Eigen::Index>(dim_);
  if (rho.rows() != n || rho.cols() != n) {
    throw DimensionError("Lindbladian: state dimension mismatch");
  }
  // -(K rho + rho K) / 2 with K = sum_j r_j L_j^dagger L_j diagonal.
  out.resize(n, n);
  const double* d = decay_.data();
  const Complex* r = rho.data();
  Complex* o = out.data();
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      o[i + k * n] = -0.5 * (d[i] + d[k]) * r[i + k * n];
    }
  }
  for (const auto& t : dissipators_) t.op.add_sandwich(t.weight, rho, out);
  const Complex minus_i(0.0, -1.0);
  for (const auto& t : hamiltonians_) {
    t.op.add_commutator(minus_i * t.weight, rho, out);
  }
}

ComplexMatrix Lindbladian::operator()(const ComplexMatrix& rho) const {
  ComplexMatrix out;
  apply(rho, out);
  return out;
}

ComplexMatrix Lindbladian::apply_dense(const ComplexMatrix& rho) const {
  const auto n = static_cast<Eigen::Index>(dim_);
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const auto& t : dissipators_) {
    out += t.weight * dissipator(t.op.to_dense(), rho);
  }
  const Complex minus_i(0.0, -1.0);
  for (const auto& t : hamiltonians_) {
    out += minus_i * t.weight * commutator(t.op.to_dense(), rho);
  }
  return out;
}

DensityMatrix rk4_step(const DeterministicGenerator& gen,
                       const DensityMatrix& rho, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
  const ComplexMatrix& r = rho.matrix();
  ComplexMatrix k1, k2, k3, k4;
  gen(r, k1);
  ComplexMatrix tmp = r + (0.5 * dt) * k1;
  gen(tmp, k2);
  tmp = r + (0.5 * dt) * k2;
  gen(tmp, k3);
  tmp = r + dt * k3;
  gen(tmp, k4);
  tmp = r + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return DensityMatrix::conditioned(std::move(tmp));
}

DensityMatrix em_step(const StochasticGenerator& gen, const DensityMatrix& rho,
                      double dt, std::span<const double> dw,
                      std::span<const double> controls) {
  if (!(dt > 0.0)) throw std::invalid_argument("em_step: dt must be positive");
  if (dw.size() != gen.diffusion.size()) {
    throw std::invalid_argument("em_step: expected " +
                                std::to_string(gen.diffusion.size()) +
                                " Wiener increments, got " +
                                std::to_string(dw.size()));
  }
  const ComplexMatrix& r = rho.matrix();
  ComplexMatrix step;
  gen.drift(r, controls, step);
  step *= dt;
  ComplexMatrix noise;
  for (std::size_t i = 0; i < dw.size(); ++i) {
    gen.diffusion[i](r, noise);
    step += dw[i] * noise;
  }
  step += r;
  return DensityMatrix::conditioned(std::move(step));
}

double measurement_record(const DensityMatrix& rho, const ComplexMatrix& s,
                          double kappa, double dt, double dw) {
  return record_increment(expectation(s, rho), kappa, dt, dw);
}

DensityMatrix integrate(const DeterministicGenerator& gen, DensityMatrix rho0,
                        double dt, std::size_t steps,
                        const StepObserver& observe) {
  DensityMatrix rho = std::move(rho0);
  for (std::size_t n = 1; n <= steps; ++n) {
    rho = rk4_step(gen, rho, dt);
    if (observe) observe(n, rho);
  }
  return rho;
}

DensityMatrix integrate_trajectory(const StochasticGenerator& gen,
                                   DensityMatrix rho0, double dt,
                                   std::size_t steps, RngStream& rng,
                                   const StepObserver& observe) {
  const std::size_t channels = gen.diffusion.size();
  if (gen.measured.size() != channels) {
    throw std::invalid_argument(
        "integrate_trajectory: one measured observable per diffusion channel");
  }
  std::unique_ptr<Controller> controller;
  if (gen.make_controller) controller = gen.make_controller();

  std::vector<double> dw(channels);
  std::vector<double> dy(channels);
  DensityMatrix rho = std::move(rho0);
  for (std::size_t n = 1; n <= steps; ++n) {
    wiener_increments(rng, dt, dw);
    for (std::size_t i = 0; i < channels; ++i) {
      const double mean = gen.measured[i].trace_product(rho.matrix()).real();
      dy[i] = record_increment(mean, gen.measurement_rate, dt, dw[i]);
    }
    const std::span<const double> u =
        controller ? controller->controls() : std::span<const double>{};
    rho = em_step(gen, rho, dt, dw, u);
    if (controller) controller->observe(dy, dt);
    if (observe) observe(n, rho);
  }
  return rho;
}

}  // namespace cqec
