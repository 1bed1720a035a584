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


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "cqec/code.hpp"
#include "test_support.hpp"

namespace cqec {
namespace {

constexpr Sign P = Sign::Plus;
constexpr Sign M = Sign::Minus;

TEST(Encode, Codewords) {
  const BitFlipCode code;
  EXPECT_EQ(code.encode(1.0, 0.0), basis_state("000"));
  EXPECT_EQ(code.encode(0.0, 1.0), basis_state("111"));
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_LT((code.encode(h, h) - (basis_state("000") + basis_state("111")) * h)
                .cwiseAbs()
                .maxCoeff(),
            1e-16);
  EXPECT_THROW(code.encode(1.0, 1.0), std::invalid_argument);
}

TEST(Syndrome, TableRows) {
  const BitFlipCode code;
  auto s = [&](const char* bits) {
    return code.syndrome(DensityMatrix::from_pure(basis_state(bits)));
  };
  EXPECT_EQ(s("000"), (std::array<double, 2>{1.0, 1.0}));
  EXPECT_EQ(s("100"), (std::array<double, 2>{-1.0, 1.0}));
  EXPECT_EQ(s("010"), (std::array<double, 2>{-1.0, -1.0}));
  EXPECT_EQ(s("001"), (std::array<double, 2>{1.0, -1.0}));
  EXPECT_THROW(code.syndrome(DensityMatrix::from_pure(basis_state("00"))), DimensionError);
}

TEST(Syndrome, CodespaceStatesReadPlusPlus) {
  const BitFlipCode code;
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  for (int i = 0; i < 20; ++i) {
    const double th = u(gen) / 2.0;
    const Complex a = std::cos(th);
    const Complex b = std::polar(std::sin(th), u(gen));
    const auto s = code.syndrome(DensityMatrix::from_pure(code.encode(a, b)));
    EXPECT_NEAR(s[0], 1.0, 1e-15);
    EXPECT_NEAR(s[1], 1.0, 1e-15);
  }
}

TEST(CorrectionFor, TableColumn) {
  const BitFlipCode code;
  EXPECT_FALSE(code.correction_for(P, P).has_value());
  EXPECT_EQ(code.correction_for(M, P)->to_string(), "XII");
  EXPECT_EQ(code.correction_for(M, M)->to_string(), "IXI");
  EXPECT_EQ(code.correction_for(P, M)->to_string(), "IIX");
}

TEST(BitFlipCode, OperatorLists) {
  const BitFlipCode code;
  ASSERT_EQ(code.generators().size(), 2u);
  EXPECT_EQ(code.generators()[0].to_string(), "ZZI");
  EXPECT_EQ(code.generators()[1].to_string(), "IZZ");
  ASSERT_EQ(code.error_operators().size(), 3u);
  EXPECT_EQ(code.error_operators()[1].to_string(), "IXI");
  EXPECT_EQ(code.correction_operators()[2].to_string(), "IIX");
  EXPECT_EQ(code.syndromes().size(), 4u);
  EXPECT_EQ(code.syndromes().front(), (Syndrome{P, P}));
}

TEST(BitFlipCode, EveryErrorAnticommutesWithSomeGenerator) {
  const BitFlipCode code;
  for (const auto& e : code.error_operators()) {
    const ComplexMatrix em = compile(e);
    bool found = false;
    for (const auto& g : code.generators()) {
      const ComplexMatrix gm = compile(g);
      if (max_abs(em * gm + gm * em) == 0.0) found = true;
    }
    EXPECT_TRUE(found) << e.to_string();
  }
}

// Flip, read the syndrome from the erred state, apply the looked-up fix.
TEST(BitFlipCode, RoundTripRestoresEveryEncodedState) {
  const BitFlipCode code;
  std::mt19937_64 gen(17);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Complex a(n(gen), n(gen));
    Complex b(n(gen), n(gen));
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    const StateVector psi = code.encode(a / norm, b / norm);
    for (const auto& e : code.error_operators()) {
      const ComplexMatrix em = compile(e);
      const DensityMatrix erred =
          DensityMatrix::conditioned(em * projector(psi) * em.adjoint());
      const auto s = code.syndrome(erred);
      const auto fix = code.correction_for(s[0] > 0 ? P : M, s[1] > 0 ? P : M);
      ASSERT_TRUE(fix.has_value()) << e.to_string();
      const ComplexMatrix c = compile(*fix);
      const ComplexMatrix restored = c * erred.matrix() * c.adjoint();
      EXPECT_NEAR(fidelity(psi, restored), 1.0, 1e-12) << e.to_string();
    }
  }
}

TEST(BitFlipCode, SyndromeSpacesPartitionTheHilbertSpace) {
  const BitFlipCode code;
  ComplexMatrix total = ComplexMatrix::Zero(8, 8);
  for (const auto& s : code.syndromes()) {
    const ComplexMatrix p = code.syndrome_projector(s);
    EXPECT_LT(testing::max_diff(p * p, p), 1e-15);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(p);
    int rank = 0;
    for (double ev : es.eigenvalues()) rank += ev > 0.5 ? 1 : 0;
    EXPECT_EQ(rank, 2);
    total += p;
  }
  EXPECT_LT(testing::max_diff(total, ComplexMatrix::Identity(8, 8)), 1e-15);
  // Each error maps the codespace to the projector of its own syndrome.
  const ComplexMatrix code_p = code.syndrome_projector({P, P});
  const ComplexMatrix x1 = compile(code.error_operators()[0]);
  EXPECT_LT(testing::max_diff(x1 * code_p * x1, code.syndrome_projector({M, P})), 1e-15);
}

}  // namespace
}  // namespace cqec
