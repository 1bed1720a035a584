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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cqec/operators.hpp"

namespace cqec {

/// Single-qubit factor of a PauliString. `Sminus` is the lowering operator
/// |0><1|, written '-' in string form.
enum class PauliFactor : std::uint8_t { I, X, Y, Z, Sminus };

char to_char(PauliFactor f);
ComplexMatrix single_qubit_matrix(PauliFactor f);

/// Tensor product of single-qubit factors. The leftmost factor acts on
/// qubit 1, the most significant bit of the computational basis index, so
/// "ZZI" compiles to Z (x) Z (x) I.
class PauliString {
 public:
  explicit PauliString(std::vector<PauliFactor> factors);

  /// Parses "XII", "III-I" etc. Throws std::invalid_argument on an empty
  /// string or an unknown character.
  static PauliString parse(std::string_view text);

  /// `op` on `qubit` (0-based, leftmost = 0) and identity elsewhere.
  static PauliString single(std::size_t n, std::size_t qubit, PauliFactor op);

  std::size_t size() const { return factors_.size(); }
  const std::vector<PauliFactor>& factors() const { return factors_; }
  PauliFactor operator[](std::size_t i) const { return factors_[i]; }

  bool has_lowering() const;
  std::string to_string() const;

  /// Concatenation: compile(p + q) == kron(compile(p), compile(q)).
  friend PauliString operator+(const PauliString& a, const PauliString& b);
  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<PauliFactor> factors_;
};

/// Dense Kronecker product of the factors.
ComplexMatrix compile(const PauliString& p);

/// Operator with at most one nonzero entry per column and per row: column j
/// maps to row `row(j)` with coefficient `coef(j)`. Pauli strings, strings
/// containing S-, and the syndrome-ladder Hamiltonian all have this shape,
/// which makes A rho A^dagger, A rho and rho A O(dim^2) instead of O(dim^3).
class MonomialOperator {
 public:
  static constexpr std::uint32_t kNone = ~std::uint32_t{0};

  MonomialOperator() = default;

  static MonomialOperator from_pauli(const PauliString& p);

  /// Extracts the monomial structure of a dense matrix. Entries with
  /// magnitude <= tol are treated as zero. Returns nullopt if some row or
  /// column has more than one nonzero.
  static std::optional<MonomialOperator> from_dense(const ComplexMatrix& m,
                                                    double tol = 1e-14);

  std::size_t dim() const { return rows_.size(); }
  std::uint32_t row(std::size_t col) const { return rows_[col]; }
  Complex coef(std::size_t col) const { return coefs_[col]; }

  ComplexMatrix to_dense() const;
  MonomialOperator adjoint() const;

  /// Diagonal of A^dagger A, i.e. |coef(j)|^2 on the support.
  Eigen::VectorXd gram_diagonal() const;

  /// tr(A rho).
  Complex trace_product(const ComplexMatrix& rho) const;

  /// out += w * A rho A^dagger
  void add_sandwich(double w, const ComplexMatrix& rho,
                    ComplexMatrix& out) const;
  /// out += c * A rho
  void add_left(Complex c, const ComplexMatrix& rho, ComplexMatrix& out) const;
  /// out += c * rho A
  void add_right(Complex c, const ComplexMatrix& rho,
                 ComplexMatrix& out) const;
  /// out += c * [A, rho]
  void add_commutator(Complex c, const ComplexMatrix& rho,
                      ComplexMatrix& out) const {
    add_left(c, rho, out);
    add_right(-c, rho, out);
  }

  StateVector apply(const StateVector& v) const;

 private:
  struct Entry {
    std::uint32_t col;
    std::uint32_t row;
    Complex coef;
  };

  void index_support();

  std::vector<std::uint32_t> rows_;
  std::vector<Complex> coefs_;
  // Nonzero columns only; `unit_` when every coefficient is exactly 1.
  std::vector<Entry> support_;
  bool unit_ = false;
};

}  // namespace cqec
