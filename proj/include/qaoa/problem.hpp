#pragma once
/**
 * @file problem.hpp
 * @brief Budget-constrained binary portfolio selection.
 *
 * Cost of a selection z (z_i = 1 when asset i is held):
 *
 *     F(z)     = q * sum_{i,j} z_i z_j sigma_ij - (1 - q) * sum_i z_i mu_i
 *     F^A(z)   = F(z) + A * (sum_i z_i - B)^2
 *
 * The double sum runs over all ordered pairs including i == j. A selection is
 * feasible when exactly B assets are held. This header also provides the
 * exhaustive classical oracle used to calibrate the penalty factor A and to
 * score quantum output distributions (approximation ratio r and probability
 * P of the optimal portfolio).
 */

#include "qaoa/market_data.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qaoa {

/// Selection mask in portfolio space: bit i set <=> asset i is held.
using Selection = std::uint64_t;

inline constexpr int kMaxEnumerationAssets = 28;
inline constexpr int kMaxPenaltyIterations = 100;

struct ProblemInstance {
  MarketStats stats;
  int budget = 1;    ///< B, number of assets to hold
  double risk = 0.0; ///< q in [0, 1]

  int size() const { return static_cast<int>(stats.size()); }
};

inline ProblemInstance make_instance(MarketStats stats, int budget, double risk) {
  validate(stats);
  const int n = static_cast<int>(stats.size());
  if (n < 2 || n > 62) throw std::invalid_argument("problem: asset count must be in [2, 62]");
  if (budget < 1 || budget > n - 1) throw std::invalid_argument("problem: budget must satisfy 1 <= B <= n-1");
  if (!(risk >= 0.0 && risk <= 1.0)) throw std::invalid_argument("problem: risk factor q must be in [0, 1]");
  return ProblemInstance{std::move(stats), budget, risk};
}

struct PenaltyConfig {
  double A = 0.0;
};

inline std::string to_bitstring(Selection z, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if ((z >> i) & 1U) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

/// Parses "z_1 z_2 ... z_n" (first character is the first asset).
inline Selection parse_bitstring(std::string_view bits, int n) {
  if (static_cast<int>(bits.size()) != n)
    throw std::invalid_argument("bitstring length " + std::to_string(bits.size()) + " does not match n = " +
                                std::to_string(n));
  Selection z = 0;
  for (int i = 0; i < n; ++i) {
    const char c = bits[static_cast<std::size_t>(i)];
    if (c == '1') z |= Selection{1} << i;
    else if (c != '0') throw std::invalid_argument("bitstring may only contain '0' and '1'");
  }
  return z;
}

inline int holdings(Selection z) { return std::popcount(z); }

inline double cost(const ProblemInstance &instance, Selection z) {
  const int n = instance.size();
  if (n < 64 && (z >> n) != 0) throw std::invalid_argument("cost: selection has bits beyond n");
  double risk_term = 0.0, return_term = 0.0;
  for (Selection a = z; a != 0; a &= a - 1) {
    const int i = std::countr_zero(a);
    return_term += instance.stats.mu(i);
    for (Selection b = z; b != 0; b &= b - 1) risk_term += instance.stats.sigma(i, std::countr_zero(b));
  }
  return instance.risk * risk_term - (1.0 - instance.risk) * return_term;
}

inline double cost(const ProblemInstance &instance, std::string_view bits) {
  return cost(instance, parse_bitstring(bits, instance.size()));
}

inline double penalized_cost(const ProblemInstance &instance, const PenaltyConfig &penalty, Selection z) {
  const double violation = static_cast<double>(holdings(z) - instance.budget);
  return cost(instance, z) + penalty.A * violation * violation;
}

inline double penalized_cost(const ProblemInstance &instance, const PenaltyConfig &penalty, std::string_view bits) {
  return penalized_cost(instance, penalty, parse_bitstring(bits, instance.size()));
}

struct OracleSummary {
  int n = 0;
  int budget = 0;
  double penalty = 0.0;
  double f_min = 0.0;    ///< min F over feasible selections
  double f_max = 0.0;    ///< max F over feasible selections
  double f_mean = 0.0;   ///< mean F over feasible selections
  double f_min_nf = 0.0; ///< min F^A over unfeasible selections
  double f_max_nf = 0.0; ///< max F^A over unfeasible selections
  Selection argmin = 0;
  Selection argmin_nf = 0;
  std::vector<Selection> optimal; ///< all feasible minimizers (degenerate ground states)
  std::size_t feasible_count = 0;
};

inline void require_enumerable(int n) {
  if (n > kMaxEnumerationAssets)
    throw std::invalid_argument("brute force enumeration limited to n <= " + std::to_string(kMaxEnumerationAssets));
}

inline bool attains_minimum(double f, double f_min) {
  return std::abs(f - f_min) <= 1e-12 * std::abs(f_min);
}

inline OracleSummary brute_force_summary(const ProblemInstance &instance, const PenaltyConfig &penalty) {
  const int n = instance.size();
  require_enumerable(n);
  if (!(penalty.A >= 0.0)) throw std::invalid_argument("penalty factor must be non-negative");

  OracleSummary s;
  s.n = n;
  s.budget = instance.budget;
  s.penalty = penalty.A;
  constexpr double inf = std::numeric_limits<double>::infinity();
  s.f_min = s.f_min_nf = inf;
  s.f_max = s.f_max_nf = -inf;
  double sum = 0.0;
  const Selection states = Selection{1} << n;
  for (Selection z = 0; z < states; ++z) {
    const double f = penalized_cost(instance, penalty, z);
    if (holdings(z) == instance.budget) {
      ++s.feasible_count;
      sum += f;
      if (f < s.f_min) {
        s.f_min = f;
        s.argmin = z;
      }
      s.f_max = std::max(s.f_max, f);
    } else {
      if (f < s.f_min_nf) {
        s.f_min_nf = f;
        s.argmin_nf = z;
      }
      s.f_max_nf = std::max(s.f_max_nf, f);
    }
  }
  s.f_mean = sum / static_cast<double>(s.feasible_count);
  for (Selection z = 0; z < states; ++z)
    if (holdings(z) == instance.budget && attains_minimum(cost(instance, z), s.f_min)) s.optimal.push_back(z);
  return s;
}

/// Smallest penalty reached by the iterative update
///   A += [(F_min + F_mean)/2 - F^nf_min] / (|z*| - B)^2
/// (z* the current unfeasible minimizer), stopping as soon as
/// F^nf_min >= (F_min + F_mean)/2.
inline PenaltyConfig calibrate_penalty(const ProblemInstance &instance, int max_iterations = kMaxPenaltyIterations) {
  const int n = instance.size();
  require_enumerable(n);
  const OracleSummary base = brute_force_summary(instance, PenaltyConfig{0.0});
  const double target = 0.5 * (base.f_min + base.f_mean);

  std::vector<double> values, violations;
  for (Selection z = 0; z < (Selection{1} << n); ++z) {
    const int d = holdings(z) - instance.budget;
    if (d == 0) continue;
    values.push_back(cost(instance, z));
    violations.push_back(static_cast<double>(d) * d);
  }

  double A = 0.0;
  for (int iteration = 0; iteration <= max_iterations; ++iteration) {
    double lowest = std::numeric_limits<double>::infinity();
    double lowest_violation = 1.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double f = values[k] + A * violations[k];
      if (f < lowest) {
        lowest = f;
        lowest_violation = violations[k];
      }
    }
    if (lowest >= target) return PenaltyConfig{A};
    double next = A + (target - lowest) / lowest_violation;
    if (next <= A) next = std::nextafter(A, std::numeric_limits<double>::infinity());
    A = next;
  }
  throw std::runtime_error("calibrate_penalty: no convergence after " + std::to_string(max_iterations) +
                           " iterations (degenerate instance?)");
}

inline double approximation_ratio(const OracleSummary &summary, Selection z, const ProblemInstance &instance) {
  if (summary.f_min == summary.f_max)
    throw std::domain_error("approximation ratio undefined: all feasible portfolios have equal cost");
  if (holdings(z) != instance.budget) return 0.0;
  return (cost(instance, z) - summary.f_max) / (summary.f_min - summary.f_max);
}

/// Probability distribution over selections, indexed by the Selection mask.
using Distribution = std::vector<double>;

inline void require_normalized(std::span<const double> distribution, int n) {
  if (distribution.size() != (std::size_t{1} << n))
    throw std::invalid_argument("distribution size does not match 2^n");
  double total = 0.0;
  for (double p : distribution) {
    if (p < -1e-12) throw std::invalid_argument("distribution has negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("distribution is not normalized");
}

inline double expected_ratio(std::span<const double> distribution, const OracleSummary &summary,
                             const ProblemInstance &instance) {
  require_normalized(distribution, instance.size());
  double r = 0.0;
  for (Selection z = 0; z < distribution.size(); ++z)
    if (distribution[z] != 0.0 && holdings(z) == instance.budget)
      r += distribution[z] * approximation_ratio(summary, z, instance);
  return r;
}

inline double ground_state_probability(std::span<const double> distribution, const OracleSummary &summary) {
  require_normalized(distribution, summary.n);
  double p = 0.0;
  for (Selection z : summary.optimal) p += distribution[z];
  return p;
}

struct HardnessStats {
  double s2_ret = 0.0;
  double s2_cor = 0.0;
  double mu_energy = 0.0;
  double s2_energy = 0.0;
  double perf = 0.0;
};

/// Performance inputs for perf = sqrt(G^2 + R^2). Default binding:
/// G = ground-state probability, R = approximation ratio.
struct PerfInputs {
  double G = 0.0;
  double R = 0.0;
};

inline double population_variance(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return acc / static_cast<double>(values.size());
}

inline HardnessStats hardness_stats(const ProblemInstance &instance, const PerfInputs &perf) {
  const int n = instance.size();
  require_enumerable(n);
  const auto &sigma = instance.stats.sigma;
  HardnessStats h;

  std::vector<double> returns(instance.stats.mu.data(), instance.stats.mu.data() + n);
  h.s2_ret = population_variance(returns);

  std::vector<double> correlations;
  for (int i = 0; i < n; ++i) {
    if (!(sigma(i, i) > 0.0)) throw std::domain_error("hardness_stats: zero variance, Pearson coefficient undefined");
    for (int j = i; j < n; ++j) correlations.push_back(sigma(i, j) / std::sqrt(sigma(i, i) * sigma(j, j)));
  }
  h.s2_cor = population_variance(correlations);

  std::vector<double> energies;
  for (Selection z = 0; z < (Selection{1} << n); ++z)
    if (holdings(z) == instance.budget) energies.push_back(cost(instance, z));
  double mean = 0.0;
  for (double e : energies) mean += e;
  h.mu_energy = mean / static_cast<double>(energies.size());
  h.s2_energy = population_variance(energies);
  h.perf = std::hypot(perf.G, perf.R);
  return h;
}

} // namespace qaoa
