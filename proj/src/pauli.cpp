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

#include "cqec/pauli.hpp"

#include <algorithm>
#include <stdexcept>

namespace cqec {

char to_char(PauliFactor f) {
  switch (f) {
    case PauliFactor::I: return 'I';
    case PauliFactor::X: return 'X';
    case PauliFactor::Y: return 'Y';
    case PauliFactor::Z: return 'Z';
    case PauliFactor::Sminus: return '-';
  }
  return '?';
}

ComplexMatrix single_qubit_matrix(PauliFactor f) {
  const Complex i(0.0, 1.0);
  ComplexMatrix m(2, 2);
  switch (f) {
    case PauliFactor::I: m << 1, 0, 0, 1; break;
    case PauliFactor::X: m << 0, 1, 1, 0; break;
    case PauliFactor::Y: m << 0, -i, i, 0; break;
    case PauliFactor::Z: m << 1, 0, 0, -1; break;
    case PauliFactor::Sminus: m << 0, 1, 0, 0; break;
  }
  return m;
}

PauliString::PauliString(std::vector<PauliFactor> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) {
    throw std::invalid_argument("PauliString needs at least one factor");
  }
}

PauliString PauliString::parse(std::string_view text) {
  std::vector<PauliFactor> fs;
  fs.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'I': fs.push_back(PauliFactor::I); break;
      case 'X': fs.push_back(PauliFactor::X); break;
      case 'Y': fs.push_back(PauliFactor::Y); break;
      case 'Z': fs.push_back(PauliFactor::Z); break;
      case '-': fs.push_back(PauliFactor::Sminus); break;
      default:
        throw std::invalid_argument("unknown Pauli factor '" +
                                    std::string(1, c) + "' in \"" +
                                    std::string(text) + "\"");
    }
  }
  return PauliString(std::move(fs));
}

PauliString PauliString::single(std::size_t n, std::size_t qubit,
                                PauliFactor op) {
  if (qubit >= n) throw std::invalid_argument("qubit index out of range");
  std::vector<PauliFactor> fs(n, PauliFactor::I);
  fs[qubit] = op;
  return PauliString(std::move(fs));
}

bool PauliString::has_lowering() const {
  return std::ranges::find(factors_, PauliFactor::Sminus) != factors_.end();
}

std::string PauliString::to_string() const {
  std::string s;
  s.reserve(factors_.size());
  for (auto f : factors_) s.push_back(to_char(f));
  return s;
}

PauliString operator+(const PauliString& a, const PauliString& b) {
  std::vector<PauliFactor> fs = a.factors_;
  fs.insert(fs.end(), b.factors_.begin(), b.factors_.end());
  return PauliString(std::move(fs));
}

ComplexMatrix compile(const PauliString& p) {
  ComplexMatrix m = single_qubit_matrix(p[0]);
  for (std::size_t k = 1; k < p.size(); ++k) {
    m = kron(m, single_qubit_matrix(p[k]));
  }
  return m;
}

MonomialOperator MonomialOperator::from_pauli(const PauliString& p) {
  const std::size_t n = p.size();
  const std::size_t dim = std::size_t{1} << n;
  const Complex i(0.0, 1.0);
  MonomialOperator op;
  op.rows_.assign(dim, kNone);
  op.coefs_.assign(dim, Complex(0.0));
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t row = col;
    Complex c = 1.0;
    bool zero = false;
    for (std::size_t k = 0; k < n && !zero; ++k) {
      const std::size_t bit = std::size_t{1} << (n - 1 - k);
      const bool one = (col & bit) != 0;
      switch (p[k]) {
        case PauliFactor::I: break;
        case PauliFactor::X: row ^= bit; break;
        case PauliFactor::Y:
          row ^= bit;
          c *= one ? -i : i;
          break;
        case PauliFactor::Z:
          if (one) c = -c;
          break;
        case PauliFactor::Sminus:
          if (one) row ^= bit; else zero = true;
          break;
      }
    }
    if (!zero) {
      op.rows_[col] = static_cast<std::uint32_t>(row);
      op.coefs_[col] = c;
    }
  }
  op.index_support();
  return op;
}

std::optional<MonomialOperator> MonomialOperator::from_dense(
    const ComplexMatrix& m, double tol) {
  require_operator(m, "MonomialOperator::from_dense");
  const auto dim = static_cast<std::size_t>(m.rows());
  MonomialOperator op;
  op.rows_.assign(dim, kNone);
  op.coefs_.assign(dim, Complex(0.0));
  std::vector<bool> row_used(dim, false);
  for (std::size_t col = 0; col < dim; ++col) {
    for (std::size_t row = 0; row < dim; ++row) {
      const Complex v = m(static_cast<Eigen::Index>(row),
                          static_cast<Eigen::Index>(col));
      if (std::abs(v) <= tol) continue;
      if (op.rows_[col] != kNone || row_used[row]) return std::nullopt;
      op.rows_[col] = static_cast<std::uint32_t>(row);
      op.coefs_[col] = v;
      row_used[row] = true;
    }
  }
  op.index_support();
  return op;
}

ComplexMatrix MonomialOperator::to_dense() const {
  const auto d = static_cast<Eigen::Index>(dim());
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (std::size_t col = 0; col < dim(); ++col) {
    if (rows_[col] != kNone) {
      m(rows_[col], static_cast<Eigen::Index>(col)) = coefs_[col];
    }
  }
  return m;
}

MonomialOperator MonomialOperator::adjoint() const {
  MonomialOperator op;
  op.rows_.assign(dim(), kNone);
  op.coefs_.assign(dim(), Complex(0.0));
  for (std::size_t col = 0; col < dim(); ++col) {
    if (rows_[col] != kNone) {
      op.rows_[rows_[col]] = static_cast<std::uint32_t>(col);
      op.coefs_[rows_[col]] = std::conj(coefs_[col]);
    }
  }
  op.index_support();
  return op;
}

Eigen::VectorXd MonomialOperator::gram_diagonal() const {
  Eigen::VectorXd d(static_cast<Eigen::Index>(dim()));
  for (std::size_t col = 0; col < dim(); ++col) {
    d(static_cast<Eigen::Index>(col)) =
        rows_[col] == kNone ? 0.0 : std::norm(coefs_[col]);
  }
  return d;
}

Complex MonomialOperator::trace_product(const ComplexMatrix& rho) const {
  // tr(A rho) = sum_j A(row_j, j) rho(j, row_j)
  Complex t = 0.0;
  for (std::size_t j = 0; j < dim(); ++j) {
    if (rows_[j] != kNone) {
      t += coefs_[j] * rho(static_cast<Eigen::Index>(j), rows_[j]);
    }
  }
  return t;
}

void MonomialOperator::index_support() {
  support_.clear();
  unit_ = true;
  for (std::size_t col = 0; col < rows_.size(); ++col) {
    if (rows_[col] == kNone) continue;
    support_.push_back({static_cast<std::uint32_t>(col), rows_[col], coefs_[col]});
    if (coefs_[col] != Complex(1.0)) unit_ = false;
  }
}

// The kernels below work on Eigen's column-major storage directly:
// element (i, j) of an n x n matrix lives at data[i + j * n].

void MonomialOperator::add_sandwich(double w, const ComplexMatrix& rho,
                                    ComplexMatrix& out) const {
  // (A rho A^dagger)(row_i, row_j) = coef_i rho(i, j) conj(coef_j)
  const std::size_t n = dim();
  const Complex* r = rho.data();
  Complex* o = out.data();
  for (const Entry& ej : support_) {
    const Complex* rcol = r + ej.col * n;
    Complex* ocol = o + ej.row * n;
    if (unit_) {
      for (const Entry& ei : support_) ocol[ei.row] += w * rcol[ei.col];
    } else {
      const Complex cj = w * std::conj(ej.coef);
      for (const Entry& ei : support_) ocol[ei.row] += ei.coef * rcol[ei.col] * cj;
    }
  }
}

void MonomialOperator::add_left(Complex c, const ComplexMatrix& rho,
                                ComplexMatrix& out) const {
  // (A rho)(row_i, k) = coef_i rho(i, k)
  const std::size_t n = dim();
  const Complex* r = rho.data();
  Complex* o = out.data();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex* rcol = r + k * n;
    Complex* ocol = o + k * n;
    if (unit_) {
      for (const Entry& e : support_) ocol[e.row] += c * rcol[e.col];
    } else {
      for (const Entry& e : support_) ocol[e.row] += c * e.coef * rcol[e.col];
    }
  }
}

void MonomialOperator::add_right(Complex c, const ComplexMatrix& rho,
                                 ComplexMatrix& out) const {
  // (rho A)(k, j) = rho(k, row_j) coef_j
  const std::size_t n = dim();
  const Complex* r = rho.data();
  Complex* o = out.data();
  for (const Entry& e : support_) {
    const Complex s = c * e.coef;
    const Complex* rcol = r + e.row * n;
    Complex* ocol = o + e.col * n;
    for (std::size_t k = 0; k < n; ++k) ocol[k] += s * rcol[k];
  }
}

StateVector MonomialOperator::apply(const StateVector& v) const {
  if (static_cast<std::size_t>(v.size()) != dim()) {
    throw DimensionError("MonomialOperator::apply: dimension mismatch");
  }
  StateVector out = StateVector::Zero(v.size());
  for (std::size_t j = 0; j < dim(); ++j) {
    if (rows_[j] != kNone) {
      out(rows_[j]) += coefs_[j] * v(static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

}  // namespace cqec
