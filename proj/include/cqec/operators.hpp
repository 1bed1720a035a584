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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cqec {

using Complex = std::complex<double>;

/// Dense complex operator on an n-qubit Hilbert space. The dimension is
/// always a power of two; the checked helpers below enforce that.
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an integrated state acquires NaN/Inf entries.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kTraceTolerance = 1e-9;
inline constexpr double kHermitianTolerance = 1e-9;
inline constexpr double kPositivityTolerance = -1e-7;

bool is_power_of_two_dim(std::size_t dim);

/// Number of qubits for a power-of-two dimension; throws otherwise.
int qubit_count(std::size_t dim);

/// Throws DimensionError unless `m` is square with a power-of-two dimension.
void require_operator(const ComplexMatrix& m, const char* what);

/// Largest absolute entry.
double max_abs(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTolerance);

// Checked arithmetic. Eigen only asserts on shape mismatches in debug builds;
// these throw DimensionError instead.
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(Complex s, const ComplexMatrix& a);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Computational basis vector |index> in a `dim`-dimensional space.
StateVector basis_state(std::size_t dim, std::size_t index);

/// Basis vector from a bit string such as "0110"; the first character is the
/// most significant bit.
StateVector basis_state(const std::string& bits);

ComplexMatrix projector(const StateVector& psi);

/// (rho + rho^dagger) / 2, in place.
void hermitize(ComplexMatrix& rho);

/// rho / tr(rho), in place. Throws NumericalError on a vanishing or
/// non-finite trace.
void renormalize(ComplexMatrix& rho);

/// Trace-one Hermitian positive-semidefinite state. Construction validates
/// the trace and Hermiticity; positivity is checked on request because it
/// needs an eigendecomposition.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix from_pure(const StateVector& psi);

  /// Hermitizes and renormalizes `m` in place before wrapping it. Used by the
  /// integrators after every step. Throws NumericalError on non-finite input
  /// or when an entry exceeds 2 in magnitude (a diverging step).
  static DensityMatrix conditioned(ComplexMatrix m);

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  int qubits() const { return qubit_count(dim()); }

  double min_eigenvalue() const;
  bool is_positive(double tol = kPositivityTolerance) const {
    return min_eigenvalue() >= tol;
  }

 private:
  struct Unchecked {};
  DensityMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

/// D[A]rho = A rho A^dagger - (A^dagger A rho + rho A^dagger A) / 2.
ComplexMatrix dissipator(const ComplexMatrix& a, const ComplexMatrix& rho);
ComplexMatrix dissipator(const ComplexMatrix& a, const DensityMatrix& rho);

/// H[A]rho = A rho + rho A^dagger - rho tr(A rho + rho A^dagger).
ComplexMatrix innovator(const ComplexMatrix& a, const ComplexMatrix& rho);
ComplexMatrix innovator(const ComplexMatrix& a, const DensityMatrix& rho);

/// tr(a rho) for Hermitian `a`. Throws std::invalid_argument for a
/// non-Hermitian observable.
double expectation(const ComplexMatrix& a, const DensityMatrix& rho);

/// <psi0|rho|psi0>. Results within 1e-7 outside [0, 1] are clipped; anything
/// further out is returned unchanged so integrator faults stay visible.
double fidelity(const StateVector& psi0, const DensityMatrix& rho);
double fidelity(const StateVector& psi0, const ComplexMatrix& rho);

}  // namespace cqec
