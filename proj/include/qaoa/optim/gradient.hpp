#pragma once
// BFGS with central finite-difference gradients and Armijo backtracking.

#include "qaoa/optim/config.hpp"
#include "qaoa/optim/nelder_mead.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace qaoa::optim {

/// Central differences with step rel_step * max(1, |x_i|).
inline std::vector<double> finite_difference_gradient(const Objective &f, std::span<const double> x,
                                                      double rel_step, std::size_t *evaluations = nullptr) {
  std::vector<double> g(x.size()), probe(x.begin(), x.end());
  std::size_t count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = rel_step * std::max(1.0, std::abs(x[i]));
    probe[i] = x[i] + h;
    const double up = detail::checked_call(f, probe, count);
    probe[i] = x[i] - h;
    const double down = detail::checked_call(f, probe, count);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  if (evaluations) *evaluations += count;
  return g;
}

inline Result gradient_optimize(const Objective &f, std::span<const double> x0, const Config &config = {}) {
  validate(config);
  const auto d = static_cast<Eigen::Index>(x0.size());
  if (d == 0) throw std::invalid_argument("gradient_optimize: empty parameter vector");
  constexpr double armijo = 1e-4;
  constexpr int max_backtracks = 60;

  Result res;
  auto as_span = [](const Eigen::VectorXd &v) { return std::span<const double>(v.data(), static_cast<std::size_t>(v.size())); };
  auto grad = [&](const Eigen::VectorXd &v) {
    const auto g = finite_difference_gradient(f, as_span(v), config.gradient_step, &res.evaluations);
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(g.data(), d));
  };

  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(x0.data(), d);
  double fx = detail::checked_call(f, as_span(x), res.evaluations);
  Eigen::VectorXd g = grad(x);
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(d, d);
  bool scaled = false;
  res.message = "iteration cap reached";

  for (res.iterations = 0; res.iterations < config.gradient_max_iterations; ++res.iterations) {
    if (g.norm() < config.gradient_tolerance) {
      res.converged = true;
      res.message = "gradient norm below tolerance";
      break;
    }
    Eigen::VectorXd dir = -H * g;
    double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      H.setIdentity();
      dir = -g;
      slope = -g.squaredNorm();
    }
    double t = 1.0, f_new = fx;
    Eigen::VectorXd x_new = x;
    bool accepted = false;
    for (int k = 0; k < max_backtracks; ++k, t *= 0.5) {
      x_new = x + t * dir;
      f_new = detail::checked_call(f, as_span(x_new), res.evaluations);
      if (f_new <= fx + armijo * t * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      res.message = "line search failed";
      break;
    }
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd g_new = grad(x_new);
    const Eigen::VectorXd y = g_new - g;
    x = x_new;
    fx = f_new;
    g = g_new;
    if (s.norm() < config.step_tolerance) {
      res.converged = true;
      res.message = "step below tolerance";
      ++res.iterations;
      break;
    }
    const double ys = y.dot(s);
    if (ys > 0.0) {
      if (!scaled) {
        H *= ys / y.squaredNorm();
        scaled = true;
      }
      const double r = 1.0 / ys;
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
      H = (I - r * s * y.transpose()) * H * (I - r * y * s.transpose()) + r * s * s.transpose();
    }
  }
  res.x.assign(x.data(), x.data() + d);
  res.f = fx;
  return res;
}

inline Result minimize(const Objective &f, std::span<const double> x0, Method method, const Config &config) {
  return method == Method::nelder_mead ? nelder_mead(f, x0, config) : gradient_optimize(f, x0, config);
}

} // namespace qaoa::optim
