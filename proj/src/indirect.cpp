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

#include "cqec/indirect.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace cqec {

namespace {

void require_rate(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument(std::string(name) + " must be a finite rate >= 0");
  }
}

double clamp_unit(double v, double lo) { return std::clamp(v, lo, 1.0); }

}  // namespace

std::vector<SyndromeRule> syndrome_rules(const StabilizerCode& code) {
  std::vector<SyndromeRule> rules;
  for (const auto& s : code.syndromes()) {
    if (const auto idx = code.correction_index(s)) rules.push_back({s, *idx});
  }
  return rules;
}

namespace {

void table_signals(std::span<const SyndromeRule> rules,
                   std::span<const double> r, std::vector<double>& g) {
  std::ranges::fill(g, 0.0);
  for (const auto& rule : rules) {
    double w = 1.0;
    for (std::size_t k = 0; k < rule.syndrome.size(); ++k) {
      w *= 0.5 * (1.0 + value(rule.syndrome[k]) * r[k]);
    }
    g[rule.correction] += w;
  }
  for (double& x : g) x = clamp_unit(x, 0.0);
}

FeedbackSignals table_signals(const StabilizerCode& code,
                              std::span<const double> r) {
  FeedbackSignals out;
  out.g.assign(code.correction_operators().size(), 0.0);
  table_signals(syndrome_rules(code), r, out.g);
  return out;
}

}  // namespace

void IndirectParams::validate() const {
  require_rate(gamma, "gamma");
  require_rate(kappa, "kappa");
  require_rate(lambda, "lambda");
  if (!(smoother_tc > 0.0) || !std::isfinite(smoother_tc)) {
    throw std::invalid_argument("smoother_tc must be positive");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("dt must be positive");
  }
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw std::invalid_argument("t_max must be positive");
  }
  if (dt > smoother_tc / 10.0) {
    throw std::invalid_argument("dt must not exceed smoother_tc / 10");
  }
}

double default_smoother_tc(double kappa) {
  if (!(kappa > 0.0)) {
    throw std::invalid_argument(
        "smoother_tc has no default when kappa is 0; set it explicitly");
  }
  return 2.0 / kappa;
}

double default_dt(double gamma, double kappa, double lambda) {
  const double m = std::max({gamma, kappa, lambda});
  if (!(m > 0.0)) {
    throw std::invalid_argument("dt has no default when every rate is 0");
  }
  return 1e-3 / m;
}

void smooth_in_place(SmootherState& state, std::span<const double> dy,
                     const IndirectParams& params) {
  if (dy.size() != state.r.size()) {
    throw std::invalid_argument("smooth_update: one record per estimate");
  }
  // No measurement, no information: hold the estimate.
  if (params.kappa == 0.0) return;
  const double gain = params.dt / params.smoother_tc;
  const double norm = 2.0 * std::sqrt(params.kappa) * params.dt;
  for (std::size_t k = 0; k < state.r.size(); ++k) {
    const double r = state.r[k] + gain * (dy[k] / norm - state.r[k]);
    state.r[k] = clamp_unit(r, -1.0);
  }
}

SmootherState smooth_update(const SmootherState& state,
                            std::span<const double> dy,
                            const IndirectParams& params) {
  SmootherState next = state;
  smooth_in_place(next, dy, params);
  return next;
}

FeedbackSignals feedback_signals(const StabilizerCode& code,
                                 const SmootherState& state) {
  if (state.r.size() != code.generators().size()) {
    throw std::invalid_argument("feedback_signals: one estimate per generator");
  }
  return table_signals(code, state.r);
}

FeedbackSignals threshold_feedback_signals(const StabilizerCode& code,
                                           const SmootherState& state) {
  if (state.r.size() != code.generators().size()) {
    throw std::invalid_argument("feedback_signals: one estimate per generator");
  }
  std::vector<double> signs(state.r.size());
  std::ranges::transform(state.r, signs.begin(),
                         [](double r) { return r >= 0.0 ? 1.0 : -1.0; });
  return table_signals(code, signs);
}

SmoothingController::SmoothingController(const StabilizerCode& code,
                                         IndirectParams params,
                                         FeedbackRule rule,
                                         SmootherState initial)
    : rules_(syndrome_rules(code)),
      params_(params),
      rule_(rule),
      state_(std::move(initial)),
      signs_(state_.r.size()) {
  if (state_.r.size() != code.generators().size()) {
    throw std::invalid_argument("SmoothingController: one estimate per generator");
  }
  signals_.g.assign(code.correction_operators().size(), 0.0);
  refresh();
}

void SmoothingController::observe(std::span<const double> records, double dt) {
  params_.dt = dt;
  smooth_in_place(state_, records, params_);
  refresh();
}

void SmoothingController::refresh() {
  if (rule_ == FeedbackRule::Proportional) {
    table_signals(rules_, state_.r, signals_.g);
    return;
  }
  for (std::size_t k = 0; k < signs_.size(); ++k) {
    signs_[k] = state_.r[k] >= 0.0 ? 1.0 : -1.0;
  }
  table_signals(rules_, signs_, signals_.g);
}

StochasticGenerator build_indirect_generator(const StabilizerCode& code,
                                             const IndirectParams& params,
                                             FeedbackRule rule) {
  params.validate();
  const std::size_t dim = code.dim();

  auto base = std::make_shared<Lindbladian>(dim);
  for (const auto& e : code.error_operators()) {
    base->add_dissipator(params.gamma, MonomialOperator::from_pauli(e));
  }
  std::vector<MonomialOperator> measured;
  for (const auto& s : code.generators()) {
    measured.push_back(MonomialOperator::from_pauli(s));
    base->add_dissipator(params.kappa, measured.back());
  }
  auto corrections = std::make_shared<std::vector<MonomialOperator>>();
  for (const auto& c : code.correction_operators()) {
    corrections->push_back(MonomialOperator::from_pauli(c));
  }

  StochasticGenerator gen;
  gen.dim = dim;
  gen.measurement_rate = params.kappa;
  const double lambda = params.lambda;
  gen.drift = [base, corrections, lambda](const ComplexMatrix& rho,
                                          std::span<const double> g,
                                          ComplexMatrix& out) {
    base->apply(rho, out);
    if (g.empty() || lambda == 0.0) return;
    const Complex minus_i(0.0, -1.0);
    for (std::size_t q = 0; q < corrections->size(); ++q) {
      if (g[q] != 0.0) {
        (*corrections)[q].add_commutator(minus_i * lambda * g[q], rho, out);
      }
    }
  };
  const double root_kappa = std::sqrt(params.kappa);
  for (const auto& s : measured) {
    // sqrt(kappa) H[S] rho = sqrt(kappa) (S rho + rho S - 2 <S> rho), S Hermitian.
    gen.diffusion.push_back([s, root_kappa](const ComplexMatrix& rho,
                                            ComplexMatrix& out) {
      const double mean = s.trace_product(rho).real();
      out = (-2.0 * root_kappa * mean) * rho;
      s.add_left(root_kappa, rho, out);
      s.add_right(root_kappa, rho, out);
    });
  }
  gen.measured = std::move(measured);
  const std::size_t m = code.generators().size();
  gen.make_controller = [&code, params, rule, m]() {
    return std::make_unique<SmoothingController>(
        code, params, rule, SmootherState{std::vector<double>(m, 1.0)});
  };
  return gen;
}

std::vector<double> run_indirect_trajectory(const StochasticGenerator& gen,
                                            const OutputGrid& grid,
                                            const StateVector& initial,
                                            std::uint64_t seed,
                                            const StepObserver& observe) {
  RngStream rng(seed);
  std::vector<double> samples(grid.points());
  const auto& at = grid.sample_steps();
  const auto& frac = grid.fractions();
  std::size_t next = 0;
  // Samples between steps n and n + 1 interpolate linearly in F.
  double previous = 0.0;
  auto take = [&](std::size_t step, const DensityMatrix& rho) {
    const double f = fidelity(initial, rho);
    for (; next < at.size(); ++next) {
      if (at[next] == step && frac[next] == 0.0) {
        samples[next] = f;
      } else if (step > 0 && at[next] == step - 1 && frac[next] > 0.0) {
        samples[next] = previous + frac[next] * (f - previous);
      } else {
        break;
      }
    }
    previous = f;
  };
  DensityMatrix rho0 = DensityMatrix::from_pure(initial);
  take(0, rho0);
  integrate_trajectory(gen, std::move(rho0), grid.dt(), grid.steps(), rng,
                       [&](std::size_t step, const DensityMatrix& rho) {
                         if (observe) observe(step, rho);
                         take(step, rho);
                       });
  return samples;
}

FidelityCurve run_indirect(const StabilizerCode& code,
                           const IndirectParams& params,
                           const StateVector& initial,
                           const IndirectRunOptions& options) {
  if (options.n_traj == 0) {
    throw std::invalid_argument("n_traj must be at least 1");
  }
  if (static_cast<std::size_t>(initial.size()) != code.dim()) {
    throw DimensionError("initial state dimension does not match the code");
  }
  const StochasticGenerator gen = build_indirect_generator(code, params, options.rule);
  const OutputGrid grid(params.t_max, params.dt, options.grid_points);
  const std::size_t points = grid.points();
  const std::size_t total = options.n_traj;

  std::vector<double> samples(total * points);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t done = 0;
  std::exception_ptr failure;
  std::size_t failed_index = total;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      {
        std::lock_guard lock(mu);
        if (failure) return;
      }
      const std::uint64_t seed = RngStream::trajectory_seed(options.base_seed, i);
      try {
        const auto f = run_indirect_trajectory(gen, grid, initial, seed);
        std::copy(f.begin(), f.end(), samples.begin() + static_cast<std::ptrdiff_t>(i * points));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure || i < failed_index) {
          failure = std::current_exception();
          failed_index = i;
        }
        return;
      }
      std::lock_guard lock(mu);
      ++done;
      if (options.progress) options.progress(done, total);
    }
  };

  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  if (failure) {
    const std::uint64_t seed =
        RngStream::trajectory_seed(options.base_seed, failed_index);
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& e) {
      throw NumericalError("trajectory " + std::to_string(failed_index) +
                           " (seed " + std::to_string(seed) +
                           ") failed: " + e.what());
    }
  }

  FidelityCurve curve = reduce_ensemble(samples, total, grid.times());
  curve.base_seed = options.base_seed;
  return curve;
}

}  // namespace cqec
