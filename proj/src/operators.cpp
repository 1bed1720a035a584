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

#include "cqec/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace cqec {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* op) {
  require_operator(a, op);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" +
                         std::to_string(a.rows()) + " vs " +
                         std::to_string(b.rows()) + ")");
  }
}

void require_state_dim(const StateVector& psi, std::size_t dim,
                       const char* op) {
  if (static_cast<std::size_t>(psi.size()) != dim) {
    throw DimensionError(std::string(op) + ": state has dimension " +
                         std::to_string(psi.size()) + ", operator has " +
                         std::to_string(dim));
  }
}

}  // namespace

bool is_power_of_two_dim(std::size_t dim) {
  return dim >= 2 && std::has_single_bit(dim);
}

int qubit_count(std::size_t dim) {
  if (!is_power_of_two_dim(dim)) {
    throw DimensionError("dimension " + std::to_string(dim) +
                         " is not a power of two >= 2");
  }
  return std::countr_zero(dim);
}

void require_operator(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() ||
      !is_power_of_two_dim(static_cast<std::size_t>(m.rows()))) {
    throw DimensionError(std::string(what) + ": expected a square 2^n x 2^n "
                         "matrix, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "add");
  return a + b;
}

ComplexMatrix scale(Complex s, const ComplexMatrix& a) { return s * a; }

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "multiply");
  return a * b;
}

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_operator(a, "kron");
  require_operator(b, "kron");
  return Eigen::kroneckerProduct(a, b).eval();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "commutator");
  return a * b - b * a;
}

StateVector basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) {
    throw DimensionError("basis index " + std::to_string(index) +
                         " out of range for dimension " + std::to_string(dim));
  }
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

StateVector basis_state(const std::string& bits) {
  if (bits.empty()) throw DimensionError("empty bit string");
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string may only contain 0 and 1: " +
                                  bits);
    }
    index = (index << 1) | static_cast<std::size_t>(c - '0');
  }
  return basis_state(std::size_t{1} << bits.size(), index);
}

ComplexMatrix projector(const StateVector& psi) {
  return psi * psi.adjoint();
}

void hermitize(ComplexMatrix& rho) {
  const ComplexMatrix h = 0.5 * (rho + rho.adjoint());
  rho = h;
}

void renormalize(ComplexMatrix& rho) {
  const double tr = rho.trace().real();
  if (!std::isfinite(tr) || std::abs(tr) < 1e-300) {
    throw NumericalError("cannot renormalize: trace is " + std::to_string(tr));
  }
  rho /= tr;
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  require_operator(m_, "DensityMatrix");
  const Complex tr = m_.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    throw std::invalid_argument("DensityMatrix: trace " +
                                std::to_string(tr.real()) + "+" +
                                std::to_string(tr.imag()) + "i is not 1");
  }
  if (!is_hermitian(m_)) {
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("DensityMatrix::from_pure: state not normalized");
  }
  return DensityMatrix(projector(psi));
}

DensityMatrix DensityMatrix::conditioned(ComplexMatrix m) {
  require_operator(m, "DensityMatrix::conditioned");
  if (!m.allFinite()) {
    throw NumericalError("state has non-finite entries");
  }
  hermitize(m);
  renormalize(m);
  // |rho_ij| <= 1 for any state; a blown-up step lands far outside.
  if (m.cwiseAbs2().maxCoeff() > 4.0) {
    throw NumericalError("state left the physical region; reduce dt");
  }
  return DensityMatrix(std::move(m), Unchecked{});
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m_,
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

ComplexMatrix dissipator(const ComplexMatrix& a, const ComplexMatrix& rho) {
  require_same_shape(a, rho, "dissipator");
  const ComplexMatrix ad = a.adjoint();
  const ComplexMatrix ada = ad * a;
  return a * rho * ad - 0.5 * (ada * rho + rho * ada);
}

ComplexMatrix dissipator(const ComplexMatrix& a, const DensityMatrix& rho) {
  return dissipator(a, rho.matrix());
}

ComplexMatrix innovator(const ComplexMatrix& a, const ComplexMatrix& rho) {
  require_same_shape(a, rho, "innovator");
  const ComplexMatrix s = a * rho + rho * a.adjoint();
  return s - rho * s.trace();
}

ComplexMatrix innovator(const ComplexMatrix& a, const DensityMatrix& rho) {
  return innovator(a, rho.matrix());
}

double expectation(const ComplexMatrix& a, const DensityMatrix& rho) {
  require_same_shape(a, rho.matrix(), "expectation");
  if (!is_hermitian(a)) {
    throw std::invalid_argument("expectation: observable is not Hermitian");
  }
  // tr(a rho) without forming the product.
  const Complex v = (a.transpose().cwiseProduct(rho.matrix())).sum();
  if (std::abs(v.imag()) > 1e-9) {
    throw NumericalError("expectation: imaginary part " +
                         std::to_string(v.imag()) + " exceeds tolerance");
  }
  return v.real();
}

double fidelity(const StateVector& psi0, const ComplexMatrix& rho) {
  require_state_dim(psi0, static_cast<std::size_t>(rho.rows()), "fidelity");
  if (std::abs(psi0.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("fidelity: reference state not normalized");
  }
  double f = psi0.dot(rho * psi0).real();
  if (f < 0.0 && f >= -1e-7) f = 0.0;
  if (f > 1.0 && f <= 1.0 + 1e-7) f = 1.0;
  return f;
}

double fidelity(const StateVector& psi0, const DensityMatrix& rho) {
  return fidelity(psi0, rho.matrix());
}

}  // namespace cqec
