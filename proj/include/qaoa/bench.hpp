#pragma once
// Experiment drivers behind the qaoa-bench subcommands.
//
// Each cmd_* function runs one study, returns its data and, when
// config.out_dir is non-empty, writes CSV/JSON files there. Runs are
// sequential and rows come out in key order, so identical configs give
// byte-identical files. Wall times are only recorded with record_timing.

#include "qaoa/detail/text.hpp"
#include "qaoa/evaluator.hpp"
#include "qaoa/market_io.hpp"
#include "qaoa/problem_io.hpp"
#include "qaoa/reference_data.hpp"
#include "qaoa/schedule.hpp"
#include "qaoa/stats.hpp"
#include "qaoa/synthetic_market.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <array>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qaoa::bench {

inline constexpr std::string_view kVersion = "0.1.0";

enum class SourceKind { reference, synthetic, stats_csv, price_csv, instance_json };

inline std::string_view to_string(SourceKind k) {
  switch (k) {
  case SourceKind::reference: return "reference";
  case SourceKind::synthetic: return "synthetic";
  case SourceKind::stats_csv: return "stats_csv";
  case SourceKind::price_csv: return "price_csv";
  case SourceKind::instance_json: return "instance_json";
  }
  return "?";
}

inline SourceKind parse_source(std::string_view s) {
  for (auto k : {SourceKind::reference, SourceKind::synthetic, SourceKind::stats_csv, SourceKind::price_csv,
                 SourceKind::instance_json})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown instance source '" + std::string(s) + "'");
}

struct InstanceSource {
  /// Unset: the reference instance for single-instance commands, the
  /// synthetic pool for ensemble and hardness.
  std::optional<SourceKind> kind;
  std::string covariance_path, returns_path; ///< stats_csv
  std::string prices_path;                   ///< price_csv
  std::string instance_path;                 ///< instance_json
  SyntheticMarketConfig synthetic;
};

enum class EvaluatorKind { statevector, sampling, density };

inline std::string_view to_string(EvaluatorKind k) {
  switch (k) {
  case EvaluatorKind::statevector: return "statevector";
  case EvaluatorKind::sampling: return "sampling";
  case EvaluatorKind::density: return "density";
  }
  return "?";
}

inline EvaluatorKind parse_evaluator(std::string_view s) {
  for (auto k : {EvaluatorKind::statevector, EvaluatorKind::sampling, EvaluatorKind::density})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown evaluator '" + std::string(s) + "'");
}

struct EvaluatorConfig {
  EvaluatorKind kind = EvaluatorKind::statevector;
  std::uint64_t shots = 1000; ///< sampling
  NoiseConfig noise;          ///< density
  bool noisy_preparation = true;
  std::uint64_t optimization_shots = 0;
  std::uint64_t final_shots = 8192;
};

struct LandscapeConfig {
  double step = 0.025;
  double gamma_max = 2.0 * std::numbers::pi;
  double beta_max = std::numbers::pi;
  std::vector<double> eta_tilde{0.0, 0.1, 1.0, 2.0, 4.0, 10.0};
};

struct NoiseSweepConfig {
  std::vector<double> eta{0.0, 0.001, 0.002, 0.003, 0.004, 0.005, 0.006, 0.007, 0.008, 0.009, 0.01};
  std::vector<int> report_depths{1, 3, 5, 7};
  std::uint64_t final_shots = 8192;
};

struct HardnessConfig {
  int instances = 2400;
  int keep = 20;
  int n = 10;
  int budget = 5;
  int p = 6;
  double A = 0.2;
  double lambda = 6.0;
};

struct RunConfig {
  InstanceSource source;
  int n = 5;
  int budget = 2;
  double risk = 1.0 / 3.0;
  int instances = 20; ///< K, ensemble size
  std::uint64_t seed = 2021;
  std::optional<double> penalty;    ///< fixed A; unset: calibrate
  std::optional<double> lambda;     ///< fixed scaling; unset: spectral matching per mixer
  std::vector<MixerKind> mixers{kAllMixers.begin(), kAllMixers.end()};
  int p_max = 7;
  EvaluatorConfig evaluator;
  optim::Config optimizer;
  StrategySet strategies;
  bool rescale = true;
  std::string out_dir;
  bool record_timing = false;
  LandscapeConfig landscape;
  NoiseSweepConfig noise_sweep;
  HardnessConfig hardness;
};

inline void validate(const RunConfig &c) {
  if (c.n < 2) throw std::invalid_argument("config: n must be at least 2");
  if (c.budget < 1 || c.budget >= c.n) throw std::invalid_argument("config: B must satisfy 1 <= B <= n-1");
  if (!(c.risk >= 0.0 && c.risk <= 1.0)) throw std::invalid_argument("config: q must be in [0, 1]");
  if (c.instances < 1) throw std::invalid_argument("config: instance count must be positive");
  if (c.p_max < 1) throw std::invalid_argument("config: p_max must be at least 1");
  if (c.mixers.empty()) throw std::invalid_argument("config: mixer list is empty");
  if (c.penalty && !(*c.penalty >= 0.0)) throw std::invalid_argument("config: fixed A must be non-negative");
  if (c.lambda && !(*c.lambda > 0.0)) throw std::invalid_argument("config: fixed lambda must be positive");
  if (c.evaluator.kind == EvaluatorKind::sampling && c.evaluator.shots < 1)
    throw std::invalid_argument("config: shots must be at least 1");
  if (!(c.landscape.step > 0.0)) throw std::invalid_argument("config: landscape step must be positive");
  const auto &h = c.hardness;
  if (h.instances < 1 || h.keep < 0 || h.p < 1 || h.budget < 1 || h.budget >= h.n)
    throw std::invalid_argument("config: invalid hardness settings");
  optim::validate(c.optimizer);
}

// ---------------------------------------------------------------- config JSON

inline nlohmann::json config_to_json(const RunConfig &c) {
  nlohmann::json j;
  auto &s = j["source"];
  s["kind"] = c.source.kind ? nlohmann::json(std::string(to_string(*c.source.kind))) : nlohmann::json("auto");
  s["covariance"] = c.source.covariance_path;
  s["returns"] = c.source.returns_path;
  s["prices"] = c.source.prices_path;
  s["instance"] = c.source.instance_path;
  s["synthetic"] = {{"assets", c.source.synthetic.assets},
                    {"trading_days", c.source.synthetic.trading_days},
                    {"sectors", c.source.synthetic.sectors},
                    {"seed", c.source.synthetic.seed}};
  j["n"] = c.n;
  j["B"] = c.budget;
  j["q"] = c.risk;
  j["instances"] = c.instances;
  j["seed"] = c.seed;
  j["penalty"] = c.penalty ? nlohmann::json(*c.penalty) : nlohmann::json("auto");
  j["lambda"] = c.lambda ? nlohmann::json(*c.lambda) : nlohmann::json("auto");
  j["mixers"] = nlohmann::json::array();
  for (auto m : c.mixers) j["mixers"].push_back(std::string(qaoa::to_string(m)));
  j["p_max"] = c.p_max;
  auto &e = j["evaluator"];
  e["kind"] = std::string(to_string(c.evaluator.kind));
  e["shots"] = c.evaluator.shots;
  e["eta"] = c.evaluator.noise.eta;
  e["normalized"] = c.evaluator.noise.normalized;
  e["eta_tilde"] = c.evaluator.noise.eta_tilde;
  e["noisy_preparation"] = c.evaluator.noisy_preparation;
  e["optimization_shots"] = c.evaluator.optimization_shots;
  e["final_shots"] = c.evaluator.final_shots;
  auto &o = j["optimizer"];
  o["method"] = c.optimizer.method ? nlohmann::json(std::string(optim::to_string(*c.optimizer.method)))
                                   : nlohmann::json("auto");
  o["initial_simplex_size"] = c.optimizer.initial_simplex_size;
  o["iterations_per_parameter"] = c.optimizer.iterations_per_parameter;
  o["xatol"] = c.optimizer.xatol;
  o["fatol"] = c.optimizer.fatol;
  o["gradient_step"] = c.optimizer.gradient_step;
  o["gradient_tolerance"] = c.optimizer.gradient_tolerance;
  j["strategies"] = {{"interpolate", c.strategies.interpolate},
                     {"linear", c.strategies.linear},
                     {"quadratic", c.strategies.quadratic},
                     {"zero_pad", c.strategies.zero_pad}};
  j["rescale"] = c.rescale;
  j["out_dir"] = c.out_dir;
  j["record_timing"] = c.record_timing;
  j["landscape"] = {{"step", c.landscape.step},
                    {"gamma_max", c.landscape.gamma_max},
                    {"beta_max", c.landscape.beta_max},
                    {"eta_tilde", c.landscape.eta_tilde}};
  j["noise_sweep"] = {{"eta", c.noise_sweep.eta},
                      {"report_depths", c.noise_sweep.report_depths},
                      {"final_shots", c.noise_sweep.final_shots}};
  j["hardness"] = {{"instances", c.hardness.instances}, {"keep", c.hardness.keep}, {"n", c.hardness.n},
                   {"B", c.hardness.budget},             {"p", c.hardness.p},       {"A", c.hardness.A},
                   {"lambda", c.hardness.lambda}};
  return j;
}

namespace detail {
inline std::optional<double> auto_or_number(const nlohmann::json &j, const char *key, std::optional<double> fallback) {
  if (!j.contains(key)) return fallback;
  const auto &v = j[key];
  if (v.is_null() || (v.is_string() && v.get<std::string>() == "auto")) return std::nullopt;
  return v.get<double>();
}
} // namespace detail

/// Keys absent from `j` keep the values in `base`. Unknown keys are errors.
inline RunConfig config_from_json(const nlohmann::json &j, RunConfig c = {}) {
  static const std::vector<std::string> known{"source",     "n",          "B",         "q",          "instances",
                                              "seed",       "penalty",    "lambda",    "mixers",     "p_max",
                                              "evaluator",  "optimizer",  "strategies", "rescale",   "out_dir",
                                              "record_timing", "landscape", "noise_sweep", "hardness"};
  for (const auto &[key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("config: unknown key '" + key + "'");

  if (j.contains("source")) {
    const auto &s = j["source"];
    if (s.contains("kind")) {
      const auto k = s["kind"].get<std::string>();
      c.source.kind = k == "auto" ? std::nullopt : std::optional(parse_source(k));
    }
    c.source.covariance_path = s.value("covariance", c.source.covariance_path);
    c.source.returns_path = s.value("returns", c.source.returns_path);
    c.source.prices_path = s.value("prices", c.source.prices_path);
    c.source.instance_path = s.value("instance", c.source.instance_path);
    if (s.contains("synthetic")) {
      const auto &y = s["synthetic"];
      auto &sy = c.source.synthetic;
      sy.assets = y.value("assets", sy.assets);
      sy.trading_days = y.value("trading_days", sy.trading_days);
      sy.sectors = y.value("sectors", sy.sectors);
      sy.seed = y.value("seed", sy.seed);
    }
  }
  c.n = j.value("n", c.n);
  c.budget = j.value("B", c.budget);
  c.risk = j.value("q", c.risk);
  c.instances = j.value("instances", c.instances);
  c.seed = j.value("seed", c.seed);
  c.penalty = detail::auto_or_number(j, "penalty", c.penalty);
  c.lambda = detail::auto_or_number(j, "lambda", c.lambda);
  if (j.contains("mixers")) {
    c.mixers.clear();
    for (const auto &m : j["mixers"]) c.mixers.push_back(parse_mixer(m.get<std::string>()));
  }
  c.p_max = j.value("p_max", c.p_max);
  if (j.contains("evaluator")) {
    const auto &e = j["evaluator"];
    auto &ev = c.evaluator;
    if (e.contains("kind")) ev.kind = parse_evaluator(e["kind"].get<std::string>());
    ev.shots = e.value("shots", ev.shots);
    ev.noise.eta = e.value("eta", ev.noise.eta);
    ev.noise.normalized = e.value("normalized", ev.noise.normalized);
    ev.noise.eta_tilde = e.value("eta_tilde", ev.noise.eta_tilde);
    ev.noisy_preparation = e.value("noisy_preparation", ev.noisy_preparation);
    ev.optimization_shots = e.value("optimization_shots", ev.optimization_shots);
    ev.final_shots = e.value("final_shots", ev.final_shots);
  }
  if (j.contains("optimizer")) {
    const auto &o = j["optimizer"];
    auto &op = c.optimizer;
    if (o.contains("method")) {
      const auto m = o["method"].get<std::string>();
      op.method = m == "auto" ? std::nullopt : std::optional(optim::parse_method(m));
    }
    op.initial_simplex_size = o.value("initial_simplex_size", op.initial_simplex_size);
    op.iterations_per_parameter = o.value("iterations_per_parameter", op.iterations_per_parameter);
    op.xatol = o.value("xatol", op.xatol);
    op.fatol = o.value("fatol", op.fatol);
    op.gradient_step = o.value("gradient_step", op.gradient_step);
    op.gradient_tolerance = o.value("gradient_tolerance", op.gradient_tolerance);
  }
  if (j.contains("strategies")) {
    const auto &s = j["strategies"];
    c.strategies.interpolate = s.value("interpolate", c.strategies.interpolate);
    c.strategies.linear = s.value("linear", c.strategies.linear);
    c.strategies.quadratic = s.value("quadratic", c.strategies.quadratic);
    c.strategies.zero_pad = s.value("zero_pad", c.strategies.zero_pad);
  }
  c.rescale = j.value("rescale", c.rescale);
  c.out_dir = j.value("out_dir", c.out_dir);
  c.record_timing = j.value("record_timing", c.record_timing);
  if (j.contains("landscape")) {
    const auto &l = j["landscape"];
    c.landscape.step = l.value("step", c.landscape.step);
    c.landscape.gamma_max = l.value("gamma_max", c.landscape.gamma_max);
    c.landscape.beta_max = l.value("beta_max", c.landscape.beta_max);
    c.landscape.eta_tilde = l.value("eta_tilde", c.landscape.eta_tilde);
  }
  if (j.contains("noise_sweep")) {
    const auto &s = j["noise_sweep"];
    c.noise_sweep.eta = s.value("eta", c.noise_sweep.eta);
    c.noise_sweep.report_depths = s.value("report_depths", c.noise_sweep.report_depths);
    c.noise_sweep.final_shots = s.value("final_shots", c.noise_sweep.final_shots);
  }
  if (j.contains("hardness")) {
    const auto &h = j["hardness"];
    auto &hc = c.hardness;
    hc.instances = h.value("instances", hc.instances);
    hc.keep = h.value("keep", hc.keep);
    hc.n = h.value("n", hc.n);
    hc.budget = h.value("B", hc.budget);
    hc.p = h.value("p", hc.p);
    hc.A = h.value("A", hc.A);
    hc.lambda = h.value("lambda", hc.lambda);
  }
  validate(c);
  return c;
}

inline RunConfig read_config(const std::string &path, RunConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  return config_from_json(nlohmann::json::parse(in), std::move(base));
}

// ---------------------------------------------------------------- instances

struct Pool {
  MarketStats stats;
  std::optional<double> penalty; ///< from an instance file
  std::optional<int> budget;
  std::optional<double> risk;
};

inline Pool load_pool(const InstanceSource &source, SourceKind fallback) {
  Pool pool;
  switch (source.kind.value_or(fallback)) {
  case SourceKind::reference: pool.stats = reference_dax5(); break;
  case SourceKind::synthetic: pool.stats = synthetic_market_pool(source.synthetic); break;
  case SourceKind::stats_csv: pool.stats = read_stats_csv(source.covariance_path, source.returns_path); break;
  case SourceKind::price_csv: {
    const auto table = read_price_csv(source.prices_path);
    pool.stats = build_market_stats(table.series);
    break;
  }
  case SourceKind::instance_json: {
    auto f = read_instance_file(source.instance_path);
    pool.stats = std::move(f.instance.stats);
    pool.penalty = f.penalty;
    pool.budget = f.instance.budget;
    pool.risk = f.instance.risk;
    break;
  }
  }
  validate(pool.stats);
  return pool;
}

/// n distinct pool indices, uniform without replacement from stream
/// derive_seed(seed, index), returned sorted.
inline std::vector<std::size_t> draw_assets(std::size_t pool_size, int n, std::uint64_t seed, std::uint64_t index) {
  if (n < 1 || static_cast<std::size_t>(n) > pool_size)
    throw std::invalid_argument("draw_assets: pool of " + std::to_string(pool_size) + " assets is smaller than n = " +
                                std::to_string(n));
  std::vector<std::size_t> idx(pool_size);
  for (std::size_t i = 0; i < pool_size; ++i) idx[i] = i;
  CounterRng rng(derive_seed(seed, index));
  for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
    const auto j = k + static_cast<std::size_t>(rng.below(pool_size - k));
    std::swap(idx[k], idx[j]);
  }
  idx.resize(static_cast<std::size_t>(n));
  std::sort(idx.begin(), idx.end());
  return idx;
}

struct Prepared {
  std::string id;
  ProblemInstance instance;
  PenaltyConfig penalty;
  OracleSummary summary;
};

inline Prepared prepare(std::string id, ProblemInstance instance, std::optional<double> fixed_penalty) {
  Prepared p{std::move(id), std::move(instance), {}, {}};
  p.penalty = fixed_penalty ? PenaltyConfig{*fixed_penalty} : calibrate_penalty(p.instance);
  p.summary = brute_force_summary(p.instance, p.penalty);
  return p;
}

inline std::string instance_id(std::size_t k) {
  std::ostringstream s;
  s << "inst" << std::setw(4) << std::setfill('0') << k;
  return s.str();
}

/// The single instance used by solve, landscape and noise-sweep: the whole
/// pool when it has exactly n assets, otherwise draw 0.
inline Prepared single_instance(const RunConfig &c) {
  const auto pool = load_pool(c.source, SourceKind::reference);
  const int budget = pool.budget.value_or(c.budget);
  const double risk = pool.risk.value_or(c.risk);
  const auto penalty = c.penalty ? c.penalty : pool.penalty;
  if (pool.stats.size() == static_cast<std::size_t>(c.n) || (pool.budget && pool.stats.size() >= 2))
    return prepare("instance", make_instance(pool.stats, budget, risk), penalty);
  const auto idx = draw_assets(pool.stats.size(), c.n, c.seed, 0);
  return prepare(instance_id(0), make_instance(pool.stats.subset(idx), budget, risk), penalty);
}

inline IsingModel model_for(const Prepared &p, MixerKind mixer, std::optional<double> fixed_lambda) {
  const double lambda = fixed_lambda ? *fixed_lambda : spectral_scaling(p.instance, p.penalty, p.summary, mixer);
  return encode(p.instance, p.penalty, lambda);
}

inline std::unique_ptr<Evaluator> make_evaluator(const EvaluatorConfig &e, std::uint64_t seed) {
  switch (e.kind) {
  case EvaluatorKind::statevector: return std::make_unique<StatevectorEvaluator>();
  case EvaluatorKind::sampling: return std::make_unique<SamplingEvaluator>(e.shots, seed);
  case EvaluatorKind::density:
    return std::make_unique<DensityEvaluator>(
        DensityOptions{e.noise, e.noisy_preparation, e.optimization_shots, e.final_shots, seed});
  }
  throw std::invalid_argument("make_evaluator: bad kind");
}

inline ScheduleOptions schedule_options(const RunConfig &c, int p_max) {
  ScheduleOptions o;
  o.p_max = p_max;
  o.strategies = c.strategies;
  o.optimizer = c.optimizer;
  o.rescale = c.rescale;
  return o;
}

/// Stream index for the evaluator of (instance k, mixer m, extra).
inline std::uint64_t run_seed(std::uint64_t seed, std::uint64_t k, MixerKind m, std::uint64_t extra = 0) {
  return derive_seed(derive_seed(derive_seed(seed, 1000003 + k), static_cast<std::uint64_t>(m)), extra);
}

// ---------------------------------------------------------------- output

struct ResultRow {
  std::string instance;
  MixerKind mixer = MixerKind::standard;
  int p = 0;
  double r = 0.0;
  double P = 0.0;
  double expectation = 0.0; ///< cost units
  double eta = 0.0;
  double eta_tilde = 0.0;
  double wall_time = 0.0; ///< seconds; 0 unless timing is recorded
  std::size_t evaluations = 0;
};

inline void check_row(const ResultRow &row) {
  constexpr double slack = 1e-12;
  if (!(row.r >= -slack && row.r <= 1.0 + slack) || !(row.P >= -slack && row.P <= 1.0 + slack))
    throw std::logic_error("result row outside [0, 1]: r = " + std::to_string(row.r) + ", P = " + std::to_string(row.P));
}

inline std::string format_rows(const std::vector<ResultRow> &rows) {
  using qaoa::detail::format_double;
  std::ostringstream out;
  out << "instance,mixer,p,r,P,expectation,eta,eta_tilde,wall_time_s,evaluations\n";
  for (const auto &r : rows)
    out << r.instance << ',' << qaoa::to_string(r.mixer) << ',' << r.p << ',' << format_double(r.r) << ','
        << format_double(r.P) << ',' << format_double(r.expectation) << ',' << format_double(r.eta) << ','
        << format_double(r.eta_tilde) << ',' << format_double(r.wall_time) << ',' << r.evaluations << '\n';
  return out.str();
}

inline void write_text(const std::string &dir, const std::string &name, const std::string &text) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + name + " in " + dir);
  out << text;
}

inline void write_json(const std::string &dir, const std::string &name, const nlohmann::json &j) {
  write_text(dir, name, j.dump(2) + "\n");
}

inline void write_meta(const RunConfig &c, std::string_view command) {
  nlohmann::json j;
  j["command"] = std::string(command);
  j["version"] = std::string(kVersion);
  j["compiler"] = __VERSION__;
  j["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
               std::to_string(EIGEN_MINOR_VERSION);
  j["json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
              std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  j["seed"] = c.seed;
  j["config"] = config_to_json(c);
  j["optimizer_substitutions"] = {
      {"SLSQP", "gradient: BFGS with central finite-difference gradients and Armijo backtracking"},
      {"COBYLA", "nelder_mead: simplex size and iteration cap as configured"}};
  write_json(c.out_dir, "meta.json", j);
}

class Stopwatch {
public:
  explicit Stopwatch(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    if (!enabled_) return 0.0;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

inline std::vector<ResultRow> rows_from(const std::string &id, const ScheduleResult &s, double eta, double eta_tilde,
                                        double wall) {
  std::vector<ResultRow> rows;
  for (const auto &d : s.history) {
    ResultRow r{id, s.mixer, d.p, d.r, d.P, d.expectation_unscaled, eta, eta_tilde, wall, d.evaluations_used};
    check_row(r);
    rows.push_back(r);
  }
  return rows;
}

// ---------------------------------------------------------------- solve

struct SolveReport {
  Prepared problem;
  struct PerMixer {
    ScheduleResult schedule;
    double lambda = 0.0;
    Selection portfolio = 0; ///< most probable selection at p_max
  };
  std::vector<PerMixer> mixers;
  std::vector<ResultRow> rows;
};

inline nlohmann::json report_to_json(const SolveReport &rep) {
  const int n = rep.problem.instance.size();
  nlohmann::json j;
  j["instance"] = instance_to_json(rep.problem.instance, rep.problem.penalty.A);
  j["oracle"] = summary_to_json(rep.problem.summary);
  j["runs"] = nlohmann::json::array();
  for (const auto &m : rep.mixers) {
    nlohmann::json r;
    r["mixer"] = std::string(qaoa::to_string(m.schedule.mixer));
    r["lambda"] = m.lambda;
    std::vector<std::string> assets;
    for (int i = 0; i < n; ++i)
      if ((m.portfolio >> i) & 1U) assets.push_back(rep.problem.instance.stats.asset_ids[static_cast<std::size_t>(i)]);
    r["portfolio"] = assets;
    r["portfolio_bits"] = to_bitstring(m.portfolio, n);
    r["feasible"] = holdings(m.portfolio) == rep.problem.instance.budget;
    r["r"] = m.schedule.history.back().r;
    r["P"] = m.schedule.history.back().P;
    r["schedule"] = schedule_to_json(m.schedule, n);
    j["runs"].push_back(r);
  }
  return j;
}

inline SolveReport cmd_solve(const RunConfig &c) {
  validate(c);
  SolveReport rep{single_instance(c), {}, {}};
  for (std::size_t mi = 0; mi < c.mixers.size(); ++mi) {
    const MixerKind kind = c.mixers[mi];
    const Stopwatch clock(c.record_timing);
    const auto model = model_for(rep.problem, kind, c.lambda);
    auto ev = make_evaluator(c.evaluator, run_seed(c.seed, 0, kind));
    auto s = run_schedule(rep.problem.instance, rep.problem.summary, model,
                          make_mixer(kind, rep.problem.instance.size(), rep.problem.instance.budget), *ev,
                          schedule_options(c, c.p_max));
    auto rows = rows_from(rep.problem.id, s, c.evaluator.noise.eta, c.evaluator.noise.eta_tilde, clock.seconds());
    rep.rows.insert(rep.rows.end(), rows.begin(), rows.end());
    const Selection best = s.history.back().most_likely;
    rep.mixers.push_back({std::move(s), model.lambda, best});
  }
  write_meta(c, "solve");
  write_text(c.out_dir, "results.csv", format_rows(rep.rows));
  write_json(c.out_dir, "report.json", report_to_json(rep));
  nlohmann::json sched;
  for (const auto &m : rep.mixers)
    sched[std::string(qaoa::to_string(m.schedule.mixer))] = schedule_to_json(m.schedule, rep.problem.instance.size());
  write_json(c.out_dir, "schedule_" + rep.problem.id + ".json", sched);
  return rep;
}

// ---------------------------------------------------------------- ensemble

struct SummaryRow {
  MixerKind mixer = MixerKind::standard;
  int p = 0;
  std::size_t count = 0;
  double mean_deviation = 0.0, std_deviation = 0.0; ///< of 1 - r
  double mean_P = 0.0, std_P = 0.0;
};

struct EnsembleResult {
  std::vector<ResultRow> rows;
  std::vector<SummaryRow> summary;
  struct RunInfo {
    std::string instance;
    MixerKind mixer;
    bool monotone;
  };
  std::vector<RunInfo> runs;
};

inline std::vector<SummaryRow> summarize(const std::vector<ResultRow> &rows, const std::vector<MixerKind> &mixers,
                                         int p_max) {
  std::vector<SummaryRow> out;
  for (MixerKind m : mixers) {
    for (int p = 1; p <= p_max; ++p) {
      std::vector<double> dev, prob;
      for (const auto &r : rows)
        if (r.mixer == m && r.p == p) {
          dev.push_back(1.0 - r.r);
          prob.push_back(r.P);
        }
      if (dev.empty()) continue;
      out.push_back({m, p, dev.size(), stats::mean(dev), stats::stddev(dev), stats::mean(prob), stats::stddev(prob)});
    }
  }
  return out;
}

inline std::string format_summary(const std::vector<SummaryRow> &rows) {
  using qaoa::detail::format_double;
  std::ostringstream out;
  out << "mixer,p,count,mean_1_minus_r,std_1_minus_r,mean_P,std_P\n";
  for (const auto &s : rows)
    out << qaoa::to_string(s.mixer) << ',' << s.p << ',' << s.count << ',' << format_double(s.mean_deviation) << ','
        << format_double(s.std_deviation) << ',' << format_double(s.mean_P) << ',' << format_double(s.std_P) << '\n';
  return out.str();
}

inline EnsembleResult cmd_ensemble(const RunConfig &c) {
  validate(c);
  const auto pool = load_pool(c.source, SourceKind::synthetic);
  const auto penalty = c.penalty ? c.penalty : pool.penalty;
  EnsembleResult res;
  for (int k = 0; k < c.instances; ++k) {
    const auto idx = draw_assets(pool.stats.size(), c.n, c.seed, static_cast<std::uint64_t>(k));
    const auto prob = prepare(instance_id(static_cast<std::size_t>(k)),
                              make_instance(pool.stats.subset(idx), c.budget, c.risk), penalty);
    nlohmann::json sched;
    sched["instance"] = instance_to_json(prob.instance, prob.penalty.A);
    sched["oracle"] = summary_to_json(prob.summary);
    for (MixerKind kind : c.mixers) {
      const Stopwatch clock(c.record_timing);
      auto ev = make_evaluator(c.evaluator, run_seed(c.seed, static_cast<std::uint64_t>(k), kind));
      const auto s = run_schedule(prob.instance, prob.summary, model_for(prob, kind, c.lambda),
                                  make_mixer(kind, c.n, c.budget), *ev, schedule_options(c, c.p_max));
      const auto rows = rows_from(prob.id, s, c.evaluator.noise.eta, c.evaluator.noise.eta_tilde, clock.seconds());
      res.rows.insert(res.rows.end(), rows.begin(), rows.end());
      res.runs.push_back({prob.id, kind, s.monotone});
      sched["schedules"][std::string(qaoa::to_string(kind))] = schedule_to_json(s, c.n);
    }
    write_json(c.out_dir, "schedule_" + prob.id + ".json", sched);
  }
  res.summary = summarize(res.rows, c.mixers, c.p_max);
  write_meta(c, "ensemble");
  write_text(c.out_dir, "results.csv", format_rows(res.rows));
  write_text(c.out_dir, "ensemble_summary.csv", format_summary(res.summary));
  return res;
}

// ---------------------------------------------------------------- landscape

/// Axis points step, 2 step, ... up to max (inclusive within 1e-9 step).
inline std::vector<double> landscape_axis(double step, double max) {
  std::vector<double> v;
  for (int k = 1;; ++k) {
    const double x = step * k;
    if (x > max + 1e-9 * step) break;
    v.push_back(x);
  }
  return v;
}

struct Landscape {
  MixerKind mixer = MixerKind::standard;
  double eta_tilde = 0.0;
  double lambda = 0.0;
  std::vector<double> gamma, beta;
  std::vector<double> values; ///< beta-major: values[i * gamma.size() + j] at (gamma[j], beta[i])
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  double argmin_gamma = 0.0, argmin_beta = 0.0;
};

/// <lambda F^(A)> at p = 1 over the grid. eta_tilde = 0 uses the
/// statevector, anything else the density matrix with normalized noise.
inline Landscape compute_landscape(const IsingModel &model, const MixerSpec &mixer, double eta_tilde,
                                   const std::vector<double> &gamma, const std::vector<double> &beta,
                                   bool noisy_preparation = true) {
  Landscape L;
  L.mixer = mixer.kind;
  L.eta_tilde = eta_tilde;
  L.lambda = model.lambda;
  L.gamma = gamma;
  L.beta = beta;
  const auto ansatz = build_ansatz(model, mixer, 1);
  std::unique_ptr<Evaluator> ev;
  if (eta_tilde == 0.0) {
    ev = std::make_unique<StatevectorEvaluator>();
  } else {
    NoiseConfig noise;
    noise.normalized = true;
    noise.eta_tilde = eta_tilde;
    ev = std::make_unique<DensityEvaluator>(DensityOptions{noise, noisy_preparation, 0, 0, 0});
  }
  L.values.reserve(gamma.size() * beta.size());
  for (double b : beta) {
    for (double g : gamma) {
      const std::array<double, 1> ga{g}, be{b};
      const double e = ev->expectation(ansatz, ga, be);
      L.values.push_back(e);
      L.max = std::max(L.max, e);
      if (e < L.min) {
        L.min = e;
        L.argmin_gamma = g;
        L.argmin_beta = b;
      }
    }
  }
  return L;
}

inline std::string format_landscape(const Landscape &L) {
  using qaoa::detail::format_double;
  std::ostringstream out;
  out << "beta\\gamma";
  for (double g : L.gamma) out << ',' << format_double(g);
  out << '\n';
  for (std::size_t i = 0; i < L.beta.size(); ++i) {
    out << format_double(L.beta[i]);
    for (std::size_t j = 0; j < L.gamma.size(); ++j) out << ',' << format_double(L.values[i * L.gamma.size() + j]);
    out << '\n';
  }
  return out.str();
}

inline std::string landscape_file_name(MixerKind m, double eta_tilde) {
  return "landscape_" + std::string(qaoa::to_string(m)) + "_" + qaoa::detail::format_double(eta_tilde) + ".csv";
}

inline std::vector<Landscape> cmd_landscape(const RunConfig &c) {
  validate(c);
  const auto prob = single_instance(c);
  const auto gamma = landscape_axis(c.landscape.step, c.landscape.gamma_max);
  const auto beta = landscape_axis(c.landscape.step, c.landscape.beta_max);
  std::vector<Landscape> out;
  nlohmann::json minima = nlohmann::json::array();
  for (MixerKind kind : c.mixers) {
    const auto model = model_for(prob, kind, c.lambda);
    const auto mixer = make_mixer(kind, prob.instance.size(), prob.instance.budget);
    for (double et : c.landscape.eta_tilde) {
      auto L = compute_landscape(model, mixer, et, gamma, beta, c.evaluator.noisy_preparation);
      write_text(c.out_dir, landscape_file_name(kind, et), format_landscape(L));
      minima.push_back({{"mixer", std::string(qaoa::to_string(kind))},
                        {"eta_tilde", et},
                        {"lambda", L.lambda},
                        {"A", prob.penalty.A},
                        {"min", L.min},
                        {"max", L.max},
                        {"argmin_gamma", L.argmin_gamma},
                        {"argmin_beta", L.argmin_beta}});
      out.push_back(std::move(L));
    }
  }
  write_meta(c, "landscape");
  write_json(c.out_dir, "landscape_minima.json", minima);
  return out;
}

// ---------------------------------------------------------------- noise sweep

inline std::vector<ResultRow> cmd_noise_sweep(const RunConfig &c) {
  validate(c);
  const auto prob = single_instance(c);
  const auto &ns = c.noise_sweep;
  const int p_max = *std::max_element(ns.report_depths.begin(), ns.report_depths.end());
  if (p_max < 1) throw std::invalid_argument("noise sweep: report depths must be positive");
  std::vector<ResultRow> rows;
  for (MixerKind kind : c.mixers) {
    const auto model = model_for(prob, kind, c.lambda);
    const auto mixer = make_mixer(kind, prob.instance.size(), prob.instance.budget);
    for (std::size_t e = 0; e < ns.eta.size(); ++e) {
      const Stopwatch clock(c.record_timing);
      DensityOptions opt;
      opt.noise.eta = ns.eta[e];
      opt.noisy_preparation = c.evaluator.noisy_preparation;
      opt.optimization_shots = c.evaluator.optimization_shots;
      opt.final_shots = ns.final_shots;
      opt.seed = run_seed(c.seed, 0, kind, e);
      DensityEvaluator ev(opt);
      const auto s = run_schedule(prob.instance, prob.summary, model, mixer, ev, schedule_options(c, p_max));
      const double wall = clock.seconds();
      for (const auto &r : rows_from(prob.id, s, ns.eta[e], 0.0, wall))
        if (std::find(ns.report_depths.begin(), ns.report_depths.end(), r.p) != ns.report_depths.end())
          rows.push_back(r);
    }
  }
  write_meta(c, "noise-sweep");
  write_text(c.out_dir, "results.csv", format_rows(rows));
  return rows;
}

// ---------------------------------------------------------------- hardness

struct HardnessRow {
  std::string instance;
  std::vector<std::string> assets;
  HardnessStats stats;
  double r = 0.0;
  double P = 0.0;
};

inline std::string format_hardness(const std::vector<HardnessRow> &rows) {
  using qaoa::detail::format_double;
  std::ostringstream out;
  out << "instance,assets,perf,r,P,s2_ret,s2_cor,mu_energy,s2_energy\n";
  for (const auto &h : rows) {
    out << h.instance << ',';
    for (std::size_t i = 0; i < h.assets.size(); ++i) out << (i ? ";" : "") << h.assets[i];
    out << ',' << format_double(h.stats.perf) << ',' << format_double(h.r) << ',' << format_double(h.P) << ','
        << format_double(h.stats.s2_ret) << ',' << format_double(h.stats.s2_cor) << ','
        << format_double(h.stats.mu_energy) << ',' << format_double(h.stats.s2_energy) << '\n';
  }
  return out.str();
}

struct HardnessResult {
  std::vector<HardnessRow> all; ///< in generation order
  std::vector<HardnessRow> best, worst;
};

/// Standard mixer, fixed A and lambda, interpolation strategy only; perf
/// binds G to the ground-state probability and R to the approximation
/// ratio at the final depth.
inline HardnessResult cmd_hardness(const RunConfig &c) {
  validate(c);
  const auto &h = c.hardness;
  const auto pool = load_pool(c.source, SourceKind::synthetic);
  ScheduleOptions opt = schedule_options(c, h.p);
  opt.strategies = {true, false, false, false};
  HardnessResult res;
  for (int k = 0; k < h.instances; ++k) {
    const auto idx = draw_assets(pool.stats.size(), h.n, c.seed, static_cast<std::uint64_t>(k));
    const auto prob =
        prepare(instance_id(static_cast<std::size_t>(k)), make_instance(pool.stats.subset(idx), h.budget, c.risk), h.A);
    StatevectorEvaluator ev;
    const auto s = run_schedule(prob.instance, prob.summary, encode(prob.instance, prob.penalty, h.lambda),
                                make_mixer(MixerKind::standard, h.n, h.budget), ev, opt);
    const auto &last = s.history.back();
    HardnessRow row{prob.id, prob.instance.stats.asset_ids, hardness_stats(prob.instance, {last.P, last.r}), last.r,
                    last.P};
    res.all.push_back(std::move(row));
  }
  std::vector<HardnessRow> sorted = res.all;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const HardnessRow &a, const HardnessRow &b) { return a.stats.perf > b.stats.perf; });
  const auto keep = std::min<std::size_t>(static_cast<std::size_t>(h.keep), sorted.size());
  res.best.assign(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(keep));
  res.worst.assign(sorted.end() - static_cast<std::ptrdiff_t>(keep), sorted.end());
  std::reverse(res.worst.begin(), res.worst.end());
  write_meta(c, "hardness");
  write_text(c.out_dir, "hardness_all.csv", format_hardness(res.all));
  write_text(c.out_dir, "hardness_best.csv", format_hardness(res.best));
  write_text(c.out_dir, "hardness_worst.csv", format_hardness(res.worst));
  return res;
}

} // namespace qaoa::bench
