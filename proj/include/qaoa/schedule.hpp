#pragma once
/**
 * @file schedule.hpp
 * @brief Depth-by-depth optimization of the QAOA angles.
 *
 * Depth 1 starts from a 10x10 logarithmic grid over the linear ansatz
 *
 *     gamma_i = m1 x_i,  beta_i = m2 (1 - x_i),  x_i = (2i - 1) / (2p)
 *
 * evaluated at p_max; the best (m1, m2) seeds a local optimization at p = 1.
 * Every later depth runs four optimizations, from
 *   (i)   linear interpolation of the previous angles,
 *   (ii)  the linear ansatz with refitted (m1, m2),
 *   (iii) a quadratic ansatz with refitted coefficients,
 *   (iv)  the previous angles padded with gamma_p = beta_p = 0,
 * and keeps the lowest expectation (ties go to the earlier strategy).
 * After each depth the model is rescaled by mu = sum|gamma| / sum|beta|.
 */

#include "qaoa/circuits.hpp"
#include "qaoa/evaluator.hpp"
#include "qaoa/optim/gradient.hpp"
#include "qaoa/optim/nelder_mead.hpp"
#include "qaoa/problem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qaoa {

struct Angles {
  std::vector<double> gamma;
  std::vector<double> beta;
};

inline std::vector<double> grid_points(int p) {
  if (p < 1) throw std::invalid_argument("grid_points: p must be at least 1");
  std::vector<double> x(static_cast<std::size_t>(p));
  for (int i = 1; i <= p; ++i) x[static_cast<std::size_t>(i - 1)] = (2.0 * i - 1.0) / (2.0 * p);
  return x;
}

inline Angles linear_angles(double m1, double m2, int p) {
  Angles a;
  for (double x : grid_points(p)) {
    a.gamma.push_back(m1 * x);
    a.beta.push_back(m2 * (1.0 - x));
  }
  return a;
}

/// gamma_i = a1 + b1 x_i + c1 x_i^2, beta_i = a2 + b2 x_i + c2 x_i^2.
struct QuadraticParams {
  double a1 = 0, b1 = 0, c1 = 0, a2 = 0, b2 = 0, c2 = 0;

  std::array<double, 6> to_array() const { return {a1, b1, c1, a2, b2, c2}; }
  static QuadraticParams from(std::span<const double> v) { return {v[0], v[1], v[2], v[3], v[4], v[5]}; }
};

inline Angles quadratic_angles(const QuadraticParams &q, int p) {
  Angles a;
  for (double x : grid_points(p)) {
    a.gamma.push_back(q.a1 + q.b1 * x + q.c1 * x * x);
    a.beta.push_back(q.a2 + q.b2 * x + q.c2 * x * x);
  }
  return a;
}

/// Starting coefficients that reproduce linear_angles(m1, m2, p).
inline QuadraticParams quadratic_from_linear(double m1, double m2) { return {0.0, m1, 0.0, m2, -m2, 0.0}; }

namespace detail {
inline std::vector<double> interpolate_one(std::span<const double> prev, int p) {
  const int q = static_cast<int>(prev.size());
  std::vector<double> out;
  if (q == 1) return std::vector<double>(static_cast<std::size_t>(p), prev[0]);
  const auto xs = grid_points(q);
  for (double x : grid_points(p)) {
    // bracketing pair = the two nearest points; end pairs outside the range
    int j = 0;
    while (j + 1 < q && xs[static_cast<std::size_t>(j + 1)] <= x) ++j;
    j = std::min(j, q - 2);
    const double x0 = xs[static_cast<std::size_t>(j)], x1 = xs[static_cast<std::size_t>(j + 1)];
    const double y0 = prev[static_cast<std::size_t>(j)], y1 = prev[static_cast<std::size_t>(j + 1)];
    out.push_back(y0 + (y1 - y0) * (x - x0) / (x1 - x0));
  }
  return out;
}
} // namespace detail

/// Strategy (i). For a single previous point the value is repeated.
inline Angles init_interpolate(std::span<const double> prev_gamma, std::span<const double> prev_beta, int p) {
  if (prev_gamma.empty() || prev_gamma.size() != prev_beta.size())
    throw std::invalid_argument("init_interpolate: previous angles must be non-empty and of equal length");
  return {detail::interpolate_one(prev_gamma, p), detail::interpolate_one(prev_beta, p)};
}

/// Strategy (iv).
inline Angles init_zero_pad(std::span<const double> prev_gamma, std::span<const double> prev_beta) {
  Angles a{{prev_gamma.begin(), prev_gamma.end()}, {prev_beta.begin(), prev_beta.end()}};
  a.gamma.push_back(0.0);
  a.beta.push_back(0.0);
  return a;
}

/// Ten geometric points strictly inside (lo, hi): lo * g^(k+1), g = (hi/lo)^(1/11).
inline std::vector<double> log_grid(double lo, double hi, int count = 10) {
  const double g = std::pow(hi / lo, 1.0 / (count + 1));
  std::vector<double> v;
  for (int k = 0; k < count; ++k) v.push_back(lo * std::pow(g, k + 1));
  return v;
}

enum class Strategy { grid = 0, interpolate = 1, linear = 2, quadratic = 3, zero_pad = 4 };

inline constexpr std::string_view to_string(Strategy s) {
  switch (s) {
  case Strategy::grid: return "grid";
  case Strategy::interpolate: return "interpolate";
  case Strategy::linear: return "linear";
  case Strategy::quadratic: return "quadratic";
  case Strategy::zero_pad: return "zero_pad";
  }
  return "?";
}

struct StrategySet {
  bool interpolate = true, linear = true, quadratic = true, zero_pad = true;
};

struct ScheduleOptions {
  int p_max = 7;
  StrategySet strategies;
  optim::Config optimizer;
  bool rescale = true;
};

struct DepthRecord {
  int p = 0;
  Strategy strategy_chosen = Strategy::grid;
  std::vector<double> gamma; ///< after rescaling, for the rescaled model
  std::vector<double> beta;
  double expectation = 0.0;          ///< scaled units of the model used at this depth
  double expectation_unscaled = 0.0; ///< cost units of F^A
  std::size_t evaluations_used = 0;
  double mu_rescale = 1.0;
  double r = 0.0; ///< approximation ratio of the final distribution
  double P = 0.0; ///< probability of the optimal portfolio
  /// Per-strategy optimized expectation in cost units; NaN when not run.
  std::array<double, 4> strategy_expectations{};
  Selection most_likely = 0; ///< most probable selection in the final distribution
};

struct ScheduleResult {
  MixerKind mixer = MixerKind::standard;
  std::string evaluator;
  std::string optimizer;
  double m1 = 0.0, m2 = 0.0; ///< grid-search optimum
  std::vector<DepthRecord> history;
  IsingModel final_model;
  bool monotone = true;
};

struct GridSearchResult {
  double m1 = 0.0, m2 = 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> values; ///< 100 values, m1 major
};

inline GridSearchResult p1_grid_search(const IsingModel &model, const MixerSpec &mixer, int p_max,
                                       Evaluator &evaluator) {
  if (p_max < 1) throw std::invalid_argument("p1_grid_search: p_max must be at least 1");
  const auto ansatz = build_ansatz(model, mixer, p_max);
  GridSearchResult res;
  for (double m1 : log_grid(0.01, 100.0)) {
    for (double m2 : log_grid(std::numbers::pi / 100.0, std::numbers::pi)) {
      const auto a = linear_angles(m1, m2, p_max);
      const double e = evaluator.expectation(ansatz, a.gamma, a.beta);
      res.values.push_back(e);
      if (e < res.best) {
        res.best = e;
        res.m1 = m1;
        res.m2 = m2;
      }
    }
  }
  return res;
}

inline optim::Method choose_method(const optim::Config &config, const Evaluator &evaluator) {
  if (config.method) return *config.method;
  return evaluator.exact() ? optim::Method::gradient : optim::Method::nelder_mead;
}

namespace detail {
inline std::vector<double> pack(const Angles &a) {
  std::vector<double> v = a.gamma;
  v.insert(v.end(), a.beta.begin(), a.beta.end());
  return v;
}

inline Angles unpack(std::span<const double> v) {
  const std::size_t p = v.size() / 2;
  return {{v.begin(), v.begin() + static_cast<std::ptrdiff_t>(p)}, {v.begin() + static_cast<std::ptrdiff_t>(p), v.end()}};
}

inline double sum_abs(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}
} // namespace detail

/// Runs the whole schedule up to options.p_max. `summary` scores the final
/// distributions (r, P); it must belong to `instance`.
inline ScheduleResult run_schedule(const ProblemInstance &instance, const OracleSummary &summary, IsingModel model,
                                   const MixerSpec &mixer, Evaluator &evaluator, const ScheduleOptions &options) {
  if (options.p_max < 1) throw std::invalid_argument("run_schedule: p_max must be at least 1");
  if (model.n != instance.size() || summary.n != instance.size())
    throw std::invalid_argument("run_schedule: model, summary and instance sizes differ");
  optim::validate(options.optimizer);
  const auto method = choose_method(options.optimizer, evaluator);

  ScheduleResult out;
  out.mixer = mixer.kind;
  out.evaluator = evaluator.name();
  out.optimizer = std::string(to_string(method));

  auto full_objective = [&](const AnsatzCircuit &ansatz) {
    return [&evaluator, &ansatz](std::span<const double> v) {
      const auto a = detail::unpack(v);
      return evaluator.expectation(ansatz, a.gamma, a.beta);
    };
  };

  std::size_t before = evaluator.evaluations();
  const auto grid = p1_grid_search(model, mixer, options.p_max, evaluator);
  double m1 = grid.m1, m2 = grid.m2;
  out.m1 = m1;
  out.m2 = m2;
  QuadraticParams quad = quadratic_from_linear(m1, m2);
  bool quad_initialized = false;

  Angles current;
  double previous_unscaled = std::numeric_limits<double>::infinity();
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  for (int p = 1; p <= options.p_max; ++p) {
    const auto ansatz = build_ansatz(model, mixer, p);
    const auto objective = full_objective(ansatz);
    DepthRecord rec;
    rec.p = p;
    rec.strategy_expectations = {nan, nan, nan, nan};

    if (p == 1) {
      const auto start = detail::pack(linear_angles(m1, m2, 1));
      const auto res = optim::minimize(objective, start, method, options.optimizer);
      current = detail::unpack(res.x);
      rec.expectation = res.f;
      rec.strategy_chosen = Strategy::grid;
    } else {
      std::array<optim::Result, 4> runs;
      std::array<bool, 4> ran{};
      if (options.strategies.interpolate) {
        runs[0] = optim::minimize(objective, detail::pack(init_interpolate(current.gamma, current.beta, p)), method,
                                  options.optimizer);
        ran[0] = true;
      }
      if (options.strategies.linear) {
        const auto lin_ansatz = ansatz;
        const optim::Objective lin = [&](std::span<const double> v) {
          const auto a = linear_angles(v[0], v[1], p);
          return evaluator.expectation(lin_ansatz, a.gamma, a.beta);
        };
        const std::array<double, 2> m0{m1, m2};
        const auto fit = optim::minimize(lin, m0, method, options.optimizer);
        m1 = fit.x[0];
        m2 = fit.x[1];
        runs[1] = optim::minimize(objective, detail::pack(linear_angles(m1, m2, p)), method, options.optimizer);
        ran[1] = true;
      }
      if (options.strategies.quadratic) {
        if (!quad_initialized) quad = quadratic_from_linear(m1, m2);
        const optim::Objective qf = [&](std::span<const double> v) {
          const auto a = quadratic_angles(QuadraticParams::from(v), p);
          return evaluator.expectation(ansatz, a.gamma, a.beta);
        };
        const auto q0 = quad.to_array();
        const auto fit = optim::minimize(qf, q0, method, options.optimizer);
        quad = QuadraticParams::from(fit.x);
        quad_initialized = true;
        runs[2] = optim::minimize(objective, detail::pack(quadratic_angles(quad, p)), method, options.optimizer);
        ran[2] = true;
      }
      if (options.strategies.zero_pad) {
        runs[3] = optim::minimize(objective, detail::pack(init_zero_pad(current.gamma, current.beta)), method,
                                  options.optimizer);
        ran[3] = true;
      }
      int best = -1;
      for (int k = 0; k < 4; ++k) {
        if (!ran[static_cast<std::size_t>(k)]) continue;
        rec.strategy_expectations[static_cast<std::size_t>(k)] = unscaled(model, runs[static_cast<std::size_t>(k)].f);
        if (best < 0 || runs[static_cast<std::size_t>(k)].f < runs[static_cast<std::size_t>(best)].f) best = k;
      }
      if (best < 0) throw std::invalid_argument("run_schedule: no initialization strategy enabled");
      current = detail::unpack(runs[static_cast<std::size_t>(best)].x);
      rec.expectation = runs[static_cast<std::size_t>(best)].f;
      rec.strategy_chosen = static_cast<Strategy>(best + 1);
    }
    rec.expectation_unscaled = unscaled(model, rec.expectation);

    const auto probs = to_selection_distribution(evaluator.final_probabilities(ansatz, current.gamma, current.beta),
                                                 instance.size());
    rec.r = expected_ratio(probs, summary, instance);
    rec.P = ground_state_probability(probs, summary);
    rec.most_likely = static_cast<Selection>(std::max_element(probs.begin(), probs.end()) - probs.begin());

    const double sg = detail::sum_abs(current.gamma), sb = detail::sum_abs(current.beta);
    if (options.rescale && sg > 0.0 && sb > 0.0) {
      const double mu = sg / sb;
      for (double &g : current.gamma) g /= mu;
      model = rescale(std::move(model), mu);
      m1 /= mu;
      quad.a1 /= mu;
      quad.b1 /= mu;
      quad.c1 /= mu;
      rec.mu_rescale = mu;
    }
    rec.gamma = current.gamma;
    rec.beta = current.beta;
    rec.evaluations_used = evaluator.evaluations() - before;
    before = evaluator.evaluations();

    if (rec.expectation_unscaled > previous_unscaled + 1e-12 * std::abs(previous_unscaled)) out.monotone = false;
    previous_unscaled = std::min(previous_unscaled, rec.expectation_unscaled);
    out.history.push_back(std::move(rec));
  }
  out.final_model = std::move(model);
  return out;
}

} // namespace qaoa
