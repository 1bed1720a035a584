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


// Command-line front end: configuration layering (JSON file < flags),
// scheme dispatch, parameter sweeps and result files.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cqec/fidelity_curve.hpp"
#include "cqec/indirect.hpp"

namespace cqec::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Scheme { Baseline1q, Unprotected3q, Indirect, Direct };

std::string_view to_string(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);

/// Invalid configuration; `field()` is the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct Sweep {
  std::string key;
  /// Values as written by the user; they also label the output files.
  std::vector<std::string> values;
};

/// Fully resolved, validated run description.
struct RunConfig {
  Scheme scheme = Scheme::Baseline1q;
  double gamma = 0.0;
  double kappa = 0.0;
  double lambda = 0.0;
  double smoother_tc = 0.0;
  double dt = 0.0;
  double t_max = 0.0;
  double alpha = 1.0;
  double beta = 0.0;
  std::size_t n_traj = 1;
  std::uint64_t seed = 0;
  std::size_t grid_points = kDefaultGridPoints;
  FeedbackRule controller = FeedbackRule::Threshold;
  std::string output;
  /// Execution-only settings; they never change results.
  unsigned threads = 0;
  bool quiet = false;
  std::optional<Sweep> sweep;

  bool stochastic() const { return scheme == Scheme::Indirect; }

  /// The keys that apply to this scheme, resolved. Feeding this object back
  /// through resolve_config() reproduces the run.
  nlohmann::json to_json() const;
};

/// Keys accepted in a configuration file (and, with '-' for '_', as flags).
const std::vector<std::string>& known_keys();

/// Validates a flat key/value object and fills in per-scheme defaults.
/// Throws ConfigError naming the offending key.
RunConfig resolve_config(const nlohmann::json& raw);

/// Reads a configuration file. Either a flat object or a metadata file
/// written by this tool (whose "config" member is used).
nlohmann::json load_config_file(const std::string& path);

/// Parses command-line arguments (without the program name), layering flags
/// over an optional --config file. Returns nullopt when --help or --version
/// was handled (text written to `out`).
std::optional<nlohmann::json> parse_arguments(const std::vector<std::string>& args,
                                              std::ostream& out);

using Progress = std::function<void(std::size_t done, std::size_t total)>;

/// Runs the configured scheme (ignoring any sweep).
FidelityCurve run_scheme(const RunConfig& config, const Progress& progress = {});

/// "t,fidelity_mean,fidelity_stderr" followed by one row per sample, every
/// number in 17-significant-digit scientific notation, LF line endings.
std::string format_csv(const FidelityCurve& curve);

/// gnuplot script plotting `csv_files` against the single-qubit analytic
/// curve for each distinct gamma in `gammas`.
std::string plot_script(const std::string& image, const std::vector<std::string>& csv_files,
                        const std::vector<std::string>& titles,
                        const std::vector<double>& gammas, double t_max);

/// Writes <output>.csv, <output>.json and <output>.gp. Throws
/// std::runtime_error on I/O failure.
void write_outputs(const RunConfig& config, const FidelityCurve& curve, double wall_seconds);

/// The whole tool: returns the process exit code (0 ok, 1 I/O failure,
/// 2 configuration error, 3 numerical failure).
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cqec::cli
