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

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "cqec/operators.hpp"
#include "cqec/pauli.hpp"

namespace cqec {

/// Eigenvalue of a stabilizer generator.
enum class Sign : std::int8_t { Plus = 1, Minus = -1 };

inline int value(Sign s) { return static_cast<int>(s); }

/// Sign pattern of all generators, in generator order.
using Syndrome = std::vector<Sign>;

/// What a continuous error-correction scheme needs to know about a code:
/// generators to measure, the error channel, and the syndrome -> correction
/// lookup. Only the bit-flip code implements it today.
class StabilizerCode {
 public:
  virtual ~StabilizerCode() = default;

  virtual std::size_t data_qubits() const = 0;
  virtual const std::vector<PauliString>& generators() const = 0;
  virtual const std::vector<PauliString>& error_operators() const = 0;
  /// One correction per physical qubit; index q is the operator that undoes
  /// a flip on qubit q.
  virtual const std::vector<PauliString>& correction_operators() const = 0;
  /// Index into correction_operators() for a syndrome, or nullopt when the
  /// syndrome indicates no error.
  virtual std::optional<std::size_t> correction_index(
      const Syndrome& s) const = 0;
  /// alpha |0>_L + beta |1>_L
  virtual StateVector encode(Complex alpha, Complex beta) const = 0;

  std::size_t dim() const { return std::size_t{1} << data_qubits(); }

  /// All 2^m sign patterns, Plus-first lexicographic.
  std::vector<Syndrome> syndromes() const;

  /// Projector onto the joint eigenspace prod_k (I + s_k G_k) / 2.
  ComplexMatrix syndrome_projector(const Syndrome& s) const;

  /// <G_k>_rho for each generator.
  std::vector<double> syndrome_values(const DensityMatrix& rho) const;
};

/// Three-qubit repetition code |0>_L = |000>, |1>_L = |111> protecting
/// against single bit flips.
///
///   <ZZI>  <IZZ>   error      correction
///    +1     +1     none       none
///    -1     +1     qubit 1    XII
///    +1     -1     qubit 3    IIX
///    -1     -1     qubit 2    IXI
class BitFlipCode final : public StabilizerCode {
 public:
  BitFlipCode();

  std::size_t data_qubits() const override { return 3; }
  const std::vector<PauliString>& generators() const override {
    return generators_;
  }
  const std::vector<PauliString>& error_operators() const override {
    return errors_;
  }
  const std::vector<PauliString>& correction_operators() const override {
    return corrections_;
  }
  std::optional<std::size_t> correction_index(
      const Syndrome& s) const override;
  StateVector encode(Complex alpha, Complex beta) const override;

  /// (<ZZI>, <IZZ>). Throws DimensionError unless rho is 8x8.
  std::array<double, 2> syndrome(const DensityMatrix& rho) const;

  std::optional<PauliString> correction_for(Sign zzi, Sign izz) const;

 private:
  std::vector<PauliString> generators_;
  std::vector<PauliString> errors_;
  std::vector<PauliString> corrections_;
};

}  // namespace cqec
