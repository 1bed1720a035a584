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

#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "cqec/operators.hpp"
#include "cqec/pauli.hpp"
#include "cqec/rng.hpp"

namespace cqec {

/// rho -> d rho / dt, written into the second argument (resized as needed).
using DeterministicGenerator =
    std::function<void(const ComplexMatrix& rho, ComplexMatrix& drho)>;

/// Lindblad generator assembled from monomial operators:
///
///   L(rho) = -i sum_k h_k [H_k, rho] + sum_j r_j D[L_j] rho
///
/// The anticommutator part of every dissipator is folded into one diagonal
/// decay vector, so an evaluation costs O(terms * dim^2).
class Lindbladian {
 public:
  explicit Lindbladian(std::size_t dim);

  /// Adds -i strength [h, rho]. `h` must be Hermitian.
  void add_hamiltonian(double strength, MonomialOperator h);
  /// Adds rate D[l] rho.
  void add_dissipator(double rate, MonomialOperator l);

  std::size_t dim() const { return dim_; }

  /// out = L(rho). `out` is resized and overwritten.
  void apply(const ComplexMatrix& rho, ComplexMatrix& out) const;
  void operator()(const ComplexMatrix& rho, ComplexMatrix& out) const {
    apply(rho, out);
  }
  ComplexMatrix operator()(const ComplexMatrix& rho) const;

  /// The same generator as a dense-route reference: builds every term with
  /// dissipator() and commutator() on dense matrices.
  ComplexMatrix apply_dense(const ComplexMatrix& rho) const;

 private:
  struct Term {
    double weight;
    MonomialOperator op;
  };
  std::size_t dim_;
  std::vector<Term> hamiltonians_;
  std::vector<Term> dissipators_;
  Eigen::VectorXd decay_;
};

/// Classical RK4 step; the result is hermitized and renormalized. Throws
/// NumericalError if the state goes non-finite (reduce dt).
DensityMatrix rk4_step(const DeterministicGenerator& gen,
                       const DensityMatrix& rho, double dt);

/// Feedback controller driven by measurement records. Holds per-trajectory
/// state; never shared between trajectories.
class Controller {
 public:
  virtual ~Controller() = default;
  /// Feedback strengths to use for the next step.
  virtual std::span<const double> controls() const = 0;
  /// Consumes one record increment per measured channel.
  virtual void observe(std::span<const double> records, double dt) = 0;
};

/// Drift and diffusion of
///
///   d rho = drift(rho; u) dt + sum_i diffusion_i(rho) dW_i
///
/// where u are the controller outputs. Channel i of the diffusion is the
/// back-action of continuously measuring `measured[i]` at `measurement_rate`.
struct StochasticGenerator {
  using Drift = std::function<void(const ComplexMatrix& rho,
                                   std::span<const double> controls,
                                   ComplexMatrix& out)>;
  using Diffusion =
      std::function<void(const ComplexMatrix& rho, ComplexMatrix& out)>;
  using ControllerFactory = std::function<std::unique_ptr<Controller>()>;

  std::size_t dim = 0;
  Drift drift;
  std::vector<Diffusion> diffusion;
  std::vector<MonomialOperator> measured;
  double measurement_rate = 0.0;
  /// Empty for open-loop dynamics.
  ControllerFactory make_controller;
};

/// rho + drift dt + sum_i diffusion_i dW_i, hermitized and renormalized.
/// Throws std::invalid_argument if dw.size() != diffusion count and
/// NumericalError on non-finite entries.
DensityMatrix em_step(const StochasticGenerator& gen, const DensityMatrix& rho,
                      double dt, std::span<const double> dw,
                      std::span<const double> controls = {});

/// Record increment dy = 2 sqrt(kappa) <s>_rho dt + dw for a measurement of
/// Hermitian `s` at strength kappa.
double measurement_record(const DensityMatrix& rho, const ComplexMatrix& s,
                          double kappa, double dt, double dw);

inline double record_increment(double mean, double kappa, double dt,
                               double dw) {
  return 2.0 * std::sqrt(kappa) * mean * dt + dw;
}

/// Called after step `step` (1-based) with the new state.
using StepObserver =
    std::function<void(std::size_t step, const DensityMatrix& rho)>;

/// Integrates `steps` RK4 steps from rho0 and returns the final state.
DensityMatrix integrate(const DeterministicGenerator& gen, DensityMatrix rho0,
                        double dt, std::size_t steps,
                        const StepObserver& observe = {});

/// One closed-loop trajectory: sample dW, form records from the pre-step
/// state, take an EM step with the controller's current outputs, then feed
/// the records to the controller.
DensityMatrix integrate_trajectory(const StochasticGenerator& gen,
                                   DensityMatrix rho0, double dt,
                                   std::size_t steps, RngStream& rng,
                                   const StepObserver& observe = {});

}  // namespace cqec
