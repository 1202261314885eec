#pragma once
// JSON forms of instances, oracle summaries, Ising models and schedule
// histories. Selections are written as 0/1 strings with asset 1 first.

#include "qaoa/ising.hpp"
#include "qaoa/problem.hpp"
#include "qaoa/schedule.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qaoa {

using json = nlohmann::json;

namespace detail {
/// NaN and infinities become null.
inline json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
} // namespace detail

struct InstanceFile {
  ProblemInstance instance;
  std::optional<double> penalty; ///< present when the file fixes A
};

inline json instance_to_json(const ProblemInstance &instance, std::optional<double> penalty = std::nullopt) {
  const int n = instance.size();
  json j;
  j["assets"] = instance.stats.asset_ids;
  std::vector<double> mu(static_cast<std::size_t>(n));
  std::vector<std::vector<double>> sigma(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    mu[static_cast<std::size_t>(i)] = instance.stats.mu(i);
    for (int k = 0; k < n; ++k) sigma[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = instance.stats.sigma(i, k);
  }
  j["mu"] = mu;
  j["sigma"] = sigma;
  j["B"] = instance.budget;
  j["q"] = instance.risk;
  if (penalty) j["A"] = *penalty;
  return j;
}

inline InstanceFile instance_from_json(const json &j) {
  MarketStats stats;
  stats.asset_ids = j.at("assets").get<std::vector<std::string>>();
  const auto mu = j.at("mu").get<std::vector<double>>();
  const auto sigma = j.at("sigma").get<std::vector<std::vector<double>>>();
  const auto n = static_cast<Eigen::Index>(stats.asset_ids.size());
  if (mu.size() != stats.asset_ids.size() || sigma.size() != stats.asset_ids.size())
    throw std::invalid_argument("instance JSON: mu and sigma must match the asset list");
  stats.mu.resize(n);
  stats.sigma.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    stats.mu(i) = mu[static_cast<std::size_t>(i)];
    if (sigma[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("instance JSON: sigma must be square");
    for (Eigen::Index k = 0; k < n; ++k) stats.sigma(i, k) = sigma[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
  }
  InstanceFile f{make_instance(std::move(stats), j.at("B").get<int>(), j.at("q").get<double>()), std::nullopt};
  if (j.contains("A") && !j["A"].is_null()) f.penalty = j["A"].get<double>();
  return f;
}

inline InstanceFile read_instance_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path);
  return instance_from_json(json::parse(in));
}

inline json summary_to_json(const OracleSummary &s) {
  json j;
  j["n"] = s.n;
  j["B"] = s.budget;
  j["A"] = s.penalty;
  j["F_min"] = s.f_min;
  j["F_max"] = s.f_max;
  j["F_mean"] = s.f_mean;
  j["F_min_nf"] = detail::number_or_null(s.f_min_nf);
  j["F_max_nf"] = detail::number_or_null(s.f_max_nf);
  j["argmin"] = to_bitstring(s.argmin, s.n);
  j["argmin_nf"] = to_bitstring(s.argmin_nf, s.n);
  j["feasible_count"] = s.feasible_count;
  j["degenerate_minimizers"] = s.optimal.size();
  return j;
}

/// W is listed row by row over the strict upper triangle: (0,1), (0,2), ..., (n-2,n-1).
inline json ising_to_json(const IsingModel &m) {
  json j;
  j["n"] = m.n;
  std::vector<double> upper, w;
  for (int i = 0; i < m.n; ++i) {
    w.push_back(m.w(i));
    for (int k = i + 1; k < m.n; ++k) upper.push_back(m.W(i, k));
  }
  j["W"] = upper;
  j["w"] = w;
  j["c"] = m.c;
  j["lambda"] = m.lambda;
  j["cumulative_scale"] = m.cumulative_scale;
  return j;
}

inline IsingModel ising_from_json(const json &j) {
  IsingModel m;
  m.n = j.at("n").get<int>();
  if (m.n < 1) throw std::invalid_argument("Ising JSON: n must be positive");
  const auto upper = j.at("W").get<std::vector<double>>();
  const auto w = j.at("w").get<std::vector<double>>();
  const auto n = static_cast<std::size_t>(m.n);
  if (upper.size() != n * (n - 1) / 2 || w.size() != n) throw std::invalid_argument("Ising JSON: coefficient counts do not match n");
  m.W = Eigen::MatrixXd::Zero(m.n, m.n);
  m.w.resize(m.n);
  std::size_t k = 0;
  for (int i = 0; i < m.n; ++i) {
    m.w(i) = w[static_cast<std::size_t>(i)];
    for (int l = i + 1; l < m.n; ++l) m.W(i, l) = upper[k++];
  }
  m.c = j.at("c").get<double>();
  m.lambda = j.at("lambda").get<double>();
  m.cumulative_scale = j.value("cumulative_scale", m.lambda);
  return m;
}

inline json depth_to_json(const DepthRecord &d, int n) {
  json j;
  j["p"] = d.p;
  j["strategy_chosen"] = std::string(to_string(d.strategy_chosen));
  j["gamma"] = d.gamma;
  j["beta"] = d.beta;
  j["expectation"] = d.expectation;
  j["expectation_unscaled"] = d.expectation_unscaled;
  j["evaluations_used"] = d.evaluations_used;
  j["mu_rescale"] = d.mu_rescale;
  j["r"] = d.r;
  j["P"] = d.P;
  json runs = json::object();
  constexpr std::array<Strategy, 4> order{Strategy::interpolate, Strategy::linear, Strategy::quadratic, Strategy::zero_pad};
  for (std::size_t k = 0; k < 4; ++k)
    runs[std::string(to_string(order[k]))] = detail::number_or_null(d.strategy_expectations[k]);
  j["strategy_expectations"] = runs;
  j["most_likely"] = to_bitstring(d.most_likely, n);
  return j;
}

inline json schedule_to_json(const ScheduleResult &s, int n) {
  json j;
  j["mixer"] = std::string(to_string(s.mixer));
  j["evaluator"] = s.evaluator;
  j["optimizer"] = s.optimizer;
  j["grid_m1"] = s.m1;
  j["grid_m2"] = s.m2;
  j["monotone"] = s.monotone;
  j["final_model"] = ising_to_json(s.final_model);
  j["history"] = json::array();
  for (const auto &d : s.history) j["history"].push_back(depth_to_json(d, n));
  return j;
}

} // namespace qaoa
