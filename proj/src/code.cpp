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

#include "cqec/code.hpp"

#include <cmath>
#include <stdexcept>

namespace cqec {

std::vector<Syndrome> StabilizerCode::syndromes() const {
  const std::size_t m = generators().size();
  std::vector<Syndrome> out;
  out.reserve(std::size_t{1} << m);
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    Syndrome s(m);
    for (std::size_t k = 0; k < m; ++k) {
      s[k] = (mask >> (m - 1 - k)) & 1 ? Sign::Minus : Sign::Plus;
    }
    out.push_back(std::move(s));
  }
  return out;
}

ComplexMatrix StabilizerCode::syndrome_projector(const Syndrome& s) const {
  const auto& gens = generators();
  if (s.size() != gens.size()) {
    throw std::invalid_argument("syndrome length does not match generators");
  }
  const auto d = static_cast<Eigen::Index>(dim());
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix p = id;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    p = p * (0.5 * (id + static_cast<double>(value(s[k])) * compile(gens[k])));
  }
  return p;
}

std::vector<double> StabilizerCode::syndrome_values(
    const DensityMatrix& rho) const {
  if (rho.dim() != dim()) {
    throw DimensionError("syndrome: state dimension " +
                         std::to_string(rho.dim()) + ", code needs " +
                         std::to_string(dim()));
  }
  std::vector<double> v;
  for (const auto& g : generators()) v.push_back(expectation(compile(g), rho));
  return v;
}

BitFlipCode::BitFlipCode()
    : generators_{PauliString::parse("ZZI"), PauliString::parse("IZZ")},
      errors_{PauliString::parse("XII"), PauliString::parse("IXI"),
              PauliString::parse("IIX")},
      corrections_(errors_) {}

std::optional<std::size_t> BitFlipCode::correction_index(
    const Syndrome& s) const {
  if (s.size() != 2) {
    throw std::invalid_argument("bit-flip code syndromes have two signs");
  }
  const bool a = s[0] == Sign::Minus;
  const bool b = s[1] == Sign::Minus;
  if (a && !b) return 0;
  if (a && b) return 1;
  if (!a && b) return 2;
  return std::nullopt;
}

StateVector BitFlipCode::encode(Complex alpha, Complex beta) const {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-9) {
    throw std::invalid_argument("encode: |alpha|^2 + |beta|^2 must be 1");
  }
  StateVector psi = StateVector::Zero(8);
  psi(0) = alpha;
  psi(7) = beta;
  return psi;
}

std::array<double, 2> BitFlipCode::syndrome(const DensityMatrix& rho) const {
  const auto v = syndrome_values(rho);
  return {v[0], v[1]};
}

std::optional<PauliString> BitFlipCode::correction_for(Sign zzi,
                                                       Sign izz) const {
  if (auto k = correction_index({zzi, izz})) return corrections_[*k];
  return std::nullopt;
}

}  // namespace cqec
