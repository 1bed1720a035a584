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

// Error correction by indirect feedback: weak continuous measurement of the
// stabilizer generators, low-pass smoothing of the records, and correction
// Hamiltonians whose strengths are set from the smoothed syndromes.
//
//   d rho = gamma sum_q D[E_q] rho dt + kappa sum_k D[S_k] rho dt
//         + sqrt(kappa) sum_k H[S_k] rho dW_k
//         - i lambda sum_q G_q(t) [C_q, rho] dt
//
// Record:   dy_k = 2 sqrt(kappa) <S_k> dt + dW_k
// Smoother: r_k <- r_k + (dt/T) (dy_k / (2 sqrt(kappa) dt) - r_k), clamped
// Signals:  G_q = prod_k (1 + s_k r_k) / 2 for the syndrome s corrected by C_q

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cqec/code.hpp"
#include "cqec/fidelity_curve.hpp"
#include "cqec/master_equation.hpp"

namespace cqec {

struct IndirectParams {
  double gamma = 0.0;        ///< bit-flip rate per qubit [Hz]
  double kappa = 150.0;      ///< measurement strength [Hz]
  double lambda = 150.0;     ///< maximum feedback strength [Hz]
  double smoother_tc = 0.0;  ///< low-pass time constant T [s]
  double dt = 0.0;           ///< integration step [s]
  double t_max = 0.05;       ///< [s]

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// T = 2 / kappa.
double default_smoother_tc(double kappa);

/// 1e-3 / max(rates); throws if every rate is zero.
double default_dt(double gamma, double kappa, double lambda);

/// Smoothed, normalized syndrome estimates, one per generator, in [-1, 1].
/// The default estimate +1 encodes the prior that the run starts in the
/// codespace.
struct SmootherState {
  std::vector<double> r;
};

/// Dimensionless feedback conditioning signals in [0, 1], one per correction
/// operator.
struct FeedbackSignals {
  std::vector<double> g;
};

/// A syndrome that calls for correction `correction`.
struct SyndromeRule {
  Syndrome syndrome;
  std::size_t correction;
};

/// The code's syndrome table without its trivial (no-correction) rows.
std::vector<SyndromeRule> syndrome_rules(const StabilizerCode& code);

SmootherState smooth_update(const SmootherState& state,
                            std::span<const double> dy,
                            const IndirectParams& params);

/// Proportional map: the bilinear interpolation of the syndrome table. For
/// the bit-flip code this is
///   g1 = (1-r1)(1+r2)/4,  g2 = (1-r1)(1-r2)/4,  g3 = (1+r1)(1-r2)/4.
FeedbackSignals feedback_signals(const StabilizerCode& code,
                                 const SmootherState& state);

/// Thresholded map: the same table applied to sign(r_k), so exactly one
/// correction (or none) is switched fully on.
FeedbackSignals threshold_feedback_signals(const StabilizerCode& code,
                                           const SmootherState& state);

enum class FeedbackRule { Proportional, Threshold };

/// Controller wrapping the smoother and a feedback rule.
class SmoothingController final : public Controller {
 public:
  SmoothingController(const StabilizerCode& code, IndirectParams params,
                      FeedbackRule rule, SmootherState initial);

  std::span<const double> controls() const override { return signals_.g; }
  void observe(std::span<const double> records, double dt) override;

  const SmootherState& state() const { return state_; }

 private:
  void refresh();

  std::vector<SyndromeRule> rules_;
  IndirectParams params_;
  FeedbackRule rule_;
  SmootherState state_;
  std::vector<double> signs_;
  FeedbackSignals signals_;
};

/// Assembles the closed-loop SME. `code` must outlive the generator.
StochasticGenerator build_indirect_generator(
    const StabilizerCode& code, const IndirectParams& params,
    FeedbackRule rule = FeedbackRule::Threshold);

struct IndirectRunOptions {
  std::size_t n_traj = 1;
  std::uint64_t base_seed = 0;
  std::size_t grid_points = kDefaultGridPoints;
  /// 0 = std::thread::hardware_concurrency().
  unsigned threads = 0;
  FeedbackRule rule = FeedbackRule::Threshold;
  /// Called with the number of finished trajectories; may be invoked from
  /// worker threads, serialized by the runner.
  std::function<void(std::size_t done, std::size_t total)> progress;
};

/// Fidelity of one trajectory sampled on `grid`. `observe` sees every step.
std::vector<double> run_indirect_trajectory(
    const StochasticGenerator& gen, const OutputGrid& grid,
    const StateVector& initial, std::uint64_t seed,
    const StepObserver& observe = {});

/// Ensemble of independent trajectories from |initial><initial|. Trajectory i
/// uses seed RngStream::trajectory_seed(base_seed, i). Throws NumericalError
/// naming the failing seed if any trajectory goes non-finite.
FidelityCurve run_indirect(const StabilizerCode& code,
                           const IndirectParams& params,
                           const StateVector& initial,
                           const IndirectRunOptions& options);

}  // namespace cqec
