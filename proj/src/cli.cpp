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


#include "cqec/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cqec/baseline.hpp"
#include "cqec/code.hpp"
#include "cqec/direct.hpp"
#include "cqec/rng.hpp"

namespace cqec::cli {

using nlohmann::json;

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr Scheme kAllSchemes[] = {Scheme::Baseline1q, Scheme::Unprotected3q,
                                  Scheme::Indirect, Scheme::Direct};

bool applies(const std::string& key, Scheme s) {
  static const std::set<std::string> coupled{"kappa", "lambda", "lambda_ratio"};
  static const std::set<std::string> indirect_only{"smoother_tc", "n_traj", "seed",
                                                   "controller"};
  if (coupled.contains(key)) return s == Scheme::Indirect || s == Scheme::Direct;
  if (indirect_only.contains(key)) return s == Scheme::Indirect;
  return true;
}

bool is_count_key(const std::string& key) {
  return key == "n_traj" || key == "grid_points" || key == "threads" || key == "seed";
}

const std::set<std::string>& sweepable_keys() {
  static const std::set<std::string> keys{"gamma",       "kappa", "lambda", "lambda_ratio",
                                          "smoother_tc", "dt",    "t_max",  "n_traj",
                                          "seed"};
  return keys;
}

std::optional<double> number(const json& raw, const std::string& key) {
  const auto it = raw.find(key);
  if (it == raw.end()) return std::nullopt;
  if (!it->is_number()) throw ConfigError(key, "must be a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw ConfigError(key, "must be finite");
  return v;
}

std::optional<std::uint64_t> count(const json& raw, const std::string& key) {
  const auto it = raw.find(key);
  if (it == raw.end()) return std::nullopt;
  if (it->is_number_unsigned()) return it->get<std::uint64_t>();
  if (it->is_number_integer() && it->get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(it->get<std::int64_t>());
  }
  throw ConfigError(key, "must be a non-negative integer");
}

std::optional<std::string> text(const json& raw, const std::string& key) {
  const auto it = raw.find(key);
  if (it == raw.end()) return std::nullopt;
  if (!it->is_string()) throw ConfigError(key, "must be a string");
  return it->get<std::string>();
}

double rate(const json& raw, const std::string& key, double fallback) {
  const double v = number(raw, key).value_or(fallback);
  if (v < 0.0) throw ConfigError(key, "must be >= 0");
  return v;
}

double positive(const json& raw, const std::string& key, double fallback) {
  const double v = number(raw, key).value_or(fallback);
  if (!(v > 0.0)) throw ConfigError(key, "must be > 0");
  return v;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

// Typed JSON value for `key` from user text, locale-independent.
json value_from_text(const std::string& key, const std::string& v) {
  const char* first = v.data();
  const char* last = v.data() + v.size();
  if (is_count_key(key)) {
    std::uint64_t n = 0;
    const auto [p, ec] = std::from_chars(first, last, n);
    if (ec != std::errc() || p != last) {
      throw ConfigError(key, "'" + v + "' is not a non-negative integer");
    }
    return n;
  }
  double x = 0.0;
  const auto [p, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || p != last) {
    throw ConfigError(key, "'" + v + "' is not a number");
  }
  return x;
}

Sweep parse_sweep(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("sweep", "expected key=v1,v2,... but got '" + spec + "'");
  }
  Sweep s;
  s.key = trim(std::string_view(spec).substr(0, eq));
  std::string_view rest = std::string_view(spec).substr(eq + 1);
  while (true) {
    const auto comma = rest.find(',');
    s.values.push_back(trim(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (!sweepable_keys().contains(s.key)) {
    throw ConfigError("sweep", "cannot sweep '" + s.key + "'");
  }
  for (const auto& v : s.values) {
    if (v.empty()) throw ConfigError("sweep", "empty value in '" + spec + "'");
    value_from_text(s.key, v);
  }
  return s;
}

std::string shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string gnuplot_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    q += c;
    if (c == '\'') q += '\'';
  }
  return q + "'";
}

std::string sanitize_label(const std::string& v) {
  std::string out;
  for (char c : v) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '.' ||
                      c == '-' || c == '+';
    out += keep ? c : '_';
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

unsigned effective_threads(unsigned requested) {
  return requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::Baseline1q: return "baseline1q";
    case Scheme::Unprotected3q: return "unprotected3q";
    case Scheme::Indirect: return "indirect";
    case Scheme::Direct: return "direct";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : kAllSchemes) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "scheme", "gamma",  "kappa",       "lambda", "lambda_ratio", "smoother_tc",
      "dt",     "t_max",  "n_traj",      "seed",   "alpha",        "beta",
      "grid_points", "threads", "controller", "output", "sweep", "quiet"};
  return keys;
}

RunConfig resolve_config(const json& raw) {
  if (!raw.is_object()) throw ConfigError("config", "must be a JSON object");
  const auto& keys = known_keys();
  for (const auto& [key, _] : raw.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(key, "unknown key");
    }
  }

  RunConfig c;
  const auto scheme_name = text(raw, "scheme");
  if (!scheme_name) {
    throw ConfigError("scheme",
                      "no scheme given (baseline1q, unprotected3q, indirect, direct)");
  }
  const auto scheme = parse_scheme(*scheme_name);
  if (!scheme) {
    throw ConfigError("scheme", "unknown scheme '" + *scheme_name +
                                    "' (baseline1q, unprotected3q, indirect, direct)");
  }
  c.scheme = *scheme;
  for (const auto& [key, _] : raw.items()) {
    if (!applies(key, c.scheme)) {
      throw ConfigError(key, "not used by scheme '" + std::string(to_string(c.scheme)) + "'");
    }
  }
  if (raw.contains("lambda") && raw.contains("lambda_ratio")) {
    throw ConfigError("lambda_ratio", "give either lambda or lambda_ratio, not both");
  }

  switch (c.scheme) {
    case Scheme::Baseline1q:
    case Scheme::Unprotected3q:
      c.gamma = rate(raw, "gamma", 1.0);
      c.t_max = positive(raw, "t_max", 2.0);
      break;
    case Scheme::Indirect:
      c.gamma = rate(raw, "gamma", 1.5);
      c.kappa = rate(raw, "kappa", 150.0);
      c.lambda = raw.contains("lambda_ratio")
                     ? rate(raw, "lambda_ratio", 1.0) * c.kappa
                     : rate(raw, "lambda", 150.0);
      if (!raw.contains("smoother_tc") && c.kappa == 0.0) {
        throw ConfigError("smoother_tc", "has no default when kappa is 0; set it");
      }
      c.smoother_tc = raw.contains("smoother_tc") ? positive(raw, "smoother_tc", 1.0)
                                                  : default_smoother_tc(c.kappa);
      c.t_max = positive(raw, "t_max", 0.2);
      break;
    case Scheme::Direct:
      c.gamma = rate(raw, "gamma", 0.05);
      c.kappa = rate(raw, "kappa", 1.0);
      c.lambda = raw.contains("lambda")
                     ? rate(raw, "lambda", 0.0)
                     : rate(raw, "lambda_ratio", kDefaultCoolingRatio) * c.kappa;
      c.t_max = positive(raw, "t_max", 20.0);
      break;
  }

  const auto points = count(raw, "grid_points").value_or(kDefaultGridPoints);
  if (points < 2) throw ConfigError("grid_points", "must be at least 2");
  c.grid_points = static_cast<std::size_t>(points);

  const double fastest = std::max({c.gamma, c.kappa, c.lambda});
  const double dt_default = fastest > 0.0
                                ? 1e-3 / fastest
                                : c.t_max / (10.0 * static_cast<double>(c.grid_points - 1));
  c.dt = positive(raw, "dt", dt_default);
  if (c.dt * static_cast<double>(c.grid_points - 1) > c.t_max * (1.0 + 1e-9)) {
    throw ConfigError("dt", "too coarse: need at least grid_points - 1 steps over t_max");
  }
  if (c.stochastic() && c.dt > c.smoother_tc / 10.0) {
    throw ConfigError("dt", "must not exceed smoother_tc / 10");
  }

  c.alpha = number(raw, "alpha").value_or(1.0);
  c.beta = number(raw, "beta").value_or(0.0);
  if (std::abs(c.alpha * c.alpha + c.beta * c.beta - 1.0) > 1e-9) {
    throw ConfigError(raw.contains("beta") ? "beta" : "alpha",
                      "initial amplitudes need alpha^2 + beta^2 = 1");
  }

  if (c.stochastic()) {
    const auto n = count(raw, "n_traj").value_or(100);
    if (n < 1) throw ConfigError("n_traj", "must be at least 1");
    c.n_traj = static_cast<std::size_t>(n);
    c.seed = count(raw, "seed").value_or(1);
    const auto rule = text(raw, "controller").value_or("threshold");
    if (rule == "threshold") {
      c.controller = FeedbackRule::Threshold;
    } else if (rule == "proportional") {
      c.controller = FeedbackRule::Proportional;
    } else {
      throw ConfigError("controller", "expected 'threshold' or 'proportional', got '" + rule + "'");
    }
  }

  const auto threads = count(raw, "threads").value_or(0);
  if (threads > 4096) throw ConfigError("threads", "at most 4096");
  c.threads = static_cast<unsigned>(threads);
  if (const auto it = raw.find("quiet"); it != raw.end()) {
    if (!it->is_boolean()) throw ConfigError("quiet", "must be true or false");
    c.quiet = it->get<bool>();
  }
  c.output = text(raw, "output").value_or("cqec_" + std::string(to_string(c.scheme)));
  if (c.output.empty()) throw ConfigError("output", "must not be empty");
  if (const auto spec = text(raw, "sweep")) {
    c.sweep = parse_sweep(*spec);
    if (!applies(c.sweep->key, c.scheme)) {
      throw ConfigError("sweep", "'" + c.sweep->key + "' is not used by scheme '" +
                                     std::string(to_string(c.scheme)) + "'");
    }
  }
  return c;
}

json RunConfig::to_json() const {
  json j;
  j["scheme"] = std::string(to_string(scheme));
  j["gamma"] = gamma;
  j["dt"] = dt;
  j["t_max"] = t_max;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["grid_points"] = grid_points;
  j["output"] = output;
  if (scheme == Scheme::Indirect || scheme == Scheme::Direct) {
    j["kappa"] = kappa;
    j["lambda"] = lambda;
  }
  if (stochastic()) {
    j["smoother_tc"] = smoother_tc;
    j["n_traj"] = n_traj;
    j["seed"] = seed;
    j["controller"] = controller == FeedbackRule::Threshold ? "threshold" : "proportional";
  }
  return j;
}

json load_config_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("config", "cannot read '" + path + "'");
  json j = json::parse(f, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config", "'" + path + "' is not valid JSON");
  if (!j.is_object()) throw ConfigError("config", "'" + path + "' must hold a JSON object");
  if (const auto it = j.find("config"); it != j.end() && it->is_object()) {
    return *it;
  }
  return j;
}

std::optional<json> parse_arguments(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{
      "Continuous quantum error correction of the three-qubit bit-flip code.\n"
      "Writes <output>.csv (t, fidelity_mean, fidelity_stderr), <output>.json\n"
      "(resolved configuration, usable with --config) and <output>.gp (gnuplot).",
      "cqec-sim"};
  app.set_version_flag("--version", std::string(kVersion));
  app.get_formatter()->column_width(34);
  app.footer("Exit status: 0 success, 1 I/O failure, 2 configuration error, 3 numerical failure.");

  std::string scheme, controller, output, config, sweep;
  double gamma = 0, kappa = 0, lambda = 0, ratio = 0, tc = 0, dt = 0, t_max = 0;
  double alpha = 0, beta = 0;
  std::uint64_t n_traj = 0, seed = 0, points = 0, threads = 0;
  bool quiet = false;

  struct Bound {
    std::string key;
    CLI::Option* opt;
    std::function<json()> value;
  };
  std::vector<Bound> bound;
  auto num = [&](const std::string& key, double& target, const std::string& help) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    bound.push_back({key, app.add_option(flag, target, help), [&target] { return json(target); }});
  };
  auto cnt = [&](const std::string& key, std::uint64_t& target, const std::string& help) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    bound.push_back({key, app.add_option(flag, target, help), [&target] { return json(target); }});
  };
  auto str = [&](const std::string& key, const std::string& flag, std::string& target,
                 const std::string& help) {
    bound.push_back({key, app.add_option(flag, target, help), [&target] { return json(target); }});
  };

  str("scheme", "scheme,--scheme", scheme, "baseline1q | unprotected3q | indirect | direct");
  num("gamma", gamma,
      "bit-flip rate per qubit [Hz]; default 1 (baseline1q, unprotected3q), 1.5 (indirect), "
      "0.05 (direct)");
  num("kappa", kappa, "measurement / Hamiltonian strength [Hz]; default 150 (indirect), 1 (direct)");
  num("lambda", lambda, "feedback / cooling strength [Hz]; default 150 (indirect), 2.5 kappa (direct)");
  num("lambda_ratio", ratio, "set lambda = ratio * kappa instead of --lambda");
  num("smoother_tc", tc, "indirect: record smoothing time constant T [s]; default 2 / kappa");
  num("dt", dt, "integration step [s]; default 1e-3 / max(gamma, kappa, lambda)");
  num("t_max", t_max, "simulated time [s]; default 2 (baselines), 0.2 (indirect), 20 (direct)");
  cnt("n_traj", n_traj, "indirect: number of trajectories; default 100");
  cnt("seed", seed, "indirect: base seed, trajectory i uses seed xor i; default 1");
  num("alpha", alpha, "initial logical amplitude of |0>; default 1");
  num("beta", beta, "initial logical amplitude of |1>; default 0");
  cnt("grid_points", points, "output samples over [0, t_max]; default 200");
  cnt("threads", threads, "worker threads for trajectories; default 0 = all cores");
  str("controller", "--controller", controller,
      "indirect feedback rule: threshold | proportional; default threshold");
  str("output", "--output,-o", output, "output path prefix; default cqec_<scheme>");
  str("sweep", "--sweep", sweep, "parameter sweep, e.g. kappa=1,2,4,8");
  app.add_option("--config", config, "JSON configuration file; flags override its values");
  auto* quiet_opt = app.add_flag("--quiet,-q", quiet, "no progress output");

  std::vector<const char*> argv{"cqec-sim"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, out);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError("arguments", e.what());
  }

  json flags = json::object();
  for (const auto& b : bound) {
    if (b.opt->count() > 0) flags[b.key] = b.value();
  }
  if (quiet_opt->count() > 0) flags["quiet"] = quiet;

  json merged = config.empty() ? json::object() : load_config_file(config);
  if (flags.contains("lambda") || flags.contains("lambda_ratio")) {
    merged.erase("lambda");
    merged.erase("lambda_ratio");
  }
  merged.update(flags);
  return merged;
}

FidelityCurve run_scheme(const RunConfig& c, const Progress& progress) {
  const BitFlipCode code;
  switch (c.scheme) {
    case Scheme::Baseline1q:
      return run_baseline_single(c.gamma, c.dt, c.t_max, c.alpha, c.beta, c.grid_points);
    case Scheme::Unprotected3q:
      return run_unprotected(code, c.gamma, c.dt, c.t_max, code.encode(c.alpha, c.beta),
                             c.grid_points);
    case Scheme::Indirect: {
      IndirectParams p;
      p.gamma = c.gamma;
      p.kappa = c.kappa;
      p.lambda = c.lambda;
      p.smoother_tc = c.smoother_tc;
      p.dt = c.dt;
      p.t_max = c.t_max;
      IndirectRunOptions o;
      o.n_traj = c.n_traj;
      o.base_seed = c.seed;
      o.grid_points = c.grid_points;
      o.threads = c.threads;
      o.rule = c.controller;
      o.progress = progress;
      return run_indirect(code, p, code.encode(c.alpha, c.beta), o);
    }
    case Scheme::Direct: {
      DirectParams p;
      p.gamma = c.gamma;
      p.kappa = c.kappa;
      p.lambda = c.lambda;
      p.dt = c.dt;
      p.t_max = c.t_max;
      return run_direct(code, p, code.encode(c.alpha, c.beta), c.grid_points);
    }
  }
  throw std::logic_error("unhandled scheme");
}

std::string format_csv(const FidelityCurve& curve) {
  std::string s = "t,fidelity_mean,fidelity_stderr\n";
  char buf[64];
  auto put = [&](double v, char end) {
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
    s.append(buf, r.ptr);
    s += end;
  };
  for (std::size_t k = 0; k < curve.times.size(); ++k) {
    put(curve.times[k], ',');
    put(curve.mean[k], ',');
    put(curve.std_error[k], '\n');
  }
  return s;
}

std::string plot_script(const std::string& image, const std::vector<std::string>& csv_files,
                        const std::vector<std::string>& titles,
                        const std::vector<double>& gammas, double t_max) {
  std::string s;
  s += "# gnuplot script generated by cqec-sim " + std::string(kVersion) + "\n";
  s += "# Dashed curves: single unprotected qubit, (1 + exp(-2 gamma t)) / 2.\n";
  s += "set terminal pngcairo size 900,600 enhanced\n";
  s += "set output " + gnuplot_quote(image) + "\n";
  s += "set datafile separator ','\n";
  s += "set xlabel 't [s]'\n";
  s += "set ylabel 'fidelity'\n";
  s += "set xrange [0:" + shortest(t_max) + "]\n";
  s += "set key bottom left\n";
  s += "set samples 500\n";
  s += "baseline(x, g) = (1.0 + exp(-2.0 * g * x)) / 2.0\n";
  s += "plot \\\n";
  for (std::size_t i = 0; i < csv_files.size(); ++i) {
    s += "  " + gnuplot_quote(csv_files[i]) +
         " skip 1 using 1:($2-$3):($2+$3) with filledcurves fs transparent solid 0.2 "
         "lc " + std::to_string(i + 1) + " notitle, \\\n";
    s += "  " + gnuplot_quote(csv_files[i]) + " skip 1 using 1:2 with lines lw 2 lc " +
         std::to_string(i + 1) + " title " + gnuplot_quote(titles[i]) + ", \\\n";
  }
  std::vector<double> distinct;
  for (double g : gammas) {
    if (std::find(distinct.begin(), distinct.end(), g) == distinct.end()) distinct.push_back(g);
  }
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    s += "  baseline(x, " + shortest(distinct[i]) + ") with lines dt 2 lc rgb 'black' title " +
         gnuplot_quote("single qubit, gamma = " + shortest(distinct[i])) +
         (i + 1 < distinct.size() ? ", \\\n" : "\n");
  }
  return s;
}

void write_outputs(const RunConfig& c, const FidelityCurve& curve, double wall_seconds) {
  write_file(c.output + ".csv", format_csv(curve));

  json meta;
  meta["config"] = c.to_json();
  meta["engine"] = {{"name", "cqec-sim"},
                    {"version", std::string(kVersion)},
                    {"rng", std::string(RngStream::kAlgorithm)},
                    {"integrator", c.stochastic() ? "euler-maruyama" : "rk4"},
                    {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                  std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                  std::to_string(EIGEN_MINOR_VERSION)}};
  meta["run"] = {{"wall_clock_seconds", wall_seconds},
                 {"finished_utc", utc_now()},
                 {"threads", c.stochastic() ? effective_threads(c.threads) : 1u},
                 {"trajectories", curve.trajectories}};
  write_file(c.output + ".json", meta.dump(2) + "\n");

  const std::string title = std::string(to_string(c.scheme)) + ", gamma = " + shortest(c.gamma);
  write_file(c.output + ".gp",
             plot_script(c.output + ".png", {c.output + ".csv"}, {title}, {c.gamma}, c.t_max));
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const auto raw = parse_arguments(args, out);
    if (!raw) return 0;
    const RunConfig base = resolve_config(*raw);

    // Resolve every sweep point before running anything.
    std::vector<RunConfig> runs;
    std::vector<std::string> titles;
    if (base.sweep) {
      for (const auto& v : base.sweep->values) {
        json point = *raw;
        point.erase("sweep");
        if (base.sweep->key == "lambda") point.erase("lambda_ratio");
        if (base.sweep->key == "lambda_ratio") point.erase("lambda");
        point[base.sweep->key] = value_from_text(base.sweep->key, v);
        point["output"] = base.output + "_" + base.sweep->key + "_" + sanitize_label(v);
        runs.push_back(resolve_config(point));
        titles.push_back(base.sweep->key + " = " + v);
      }
    } else {
      runs.push_back(base);
    }

    for (std::size_t i = 0; i < runs.size(); ++i) {
      const RunConfig& c = runs[i];
      const std::string label = std::string(to_string(c.scheme)) +
                                (base.sweep ? " [" + titles[i] + "]" : "");
      std::size_t reported = 0;
      Progress progress;
      if (!c.quiet) {
        progress = [&](std::size_t done, std::size_t total) {
          const std::size_t decile = done * 10 / total;
          if (decile > reported) {
            reported = decile;
            err << label << ": " << decile * 10 << "% (" << done << "/" << total
                << " trajectories)\n";
          }
        };
      }
      const auto t0 = std::chrono::steady_clock::now();
      const FidelityCurve curve = run_scheme(c, progress);
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      write_outputs(c, curve, wall);
      if (!c.quiet) {
        out << label << ": wrote " << c.output << ".{csv,json,gp} (" << std::fixed
            << std::setprecision(2) << wall << " s)\n";
        out.unsetf(std::ios::floatfield);
      }
    }

    if (base.sweep) {
      std::vector<std::string> files;
      std::vector<double> gammas;
      double t_max = 0.0;
      for (const auto& c : runs) {
        files.push_back(c.output + ".csv");
        gammas.push_back(c.gamma);
        t_max = std::max(t_max, c.t_max);
      }
      const std::string script = base.output + "_sweep.gp";
      write_file(script, plot_script(base.output + "_sweep.png", files, titles, gammas, t_max));
      if (!base.quiet) out << "sweep: wrote " << script << "\n";
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "cqec-sim: config error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    err << "cqec-sim: I/O error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    err << "cqec-sim: numerical failure: " << e.what() << " (try a smaller --dt)\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "cqec-sim: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "cqec-sim: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cqec::cli
