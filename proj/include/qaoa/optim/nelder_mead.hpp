#pragma once
// Downhill simplex with reflection 1, expansion 2, contraction 0.5 and
// shrink 0.5, inside and outside contraction. The initial simplex is x0
// plus x0 + size * e_i for every coordinate.

#include "qaoa/optim/config.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

namespace qaoa::optim {

inline Result nelder_mead(const Objective &f, std::span<const double> x0, const Config &config = {}) {
  validate(config);
  const std::size_t d = x0.size();
  if (d == 0) throw std::invalid_argument("nelder_mead: empty parameter vector");
  constexpr double rho = 1.0, chi = 2.0, psi = 0.5, sigma = 0.5;
  const int max_iterations = config.iterations_per_parameter * static_cast<int>(d);

  Result res;
  std::vector<std::vector<double>> sim(d + 1, std::vector<double>(x0.begin(), x0.end()));
  for (std::size_t k = 0; k < d; ++k) sim[k + 1][k] += config.initial_simplex_size;
  std::vector<double> fsim(d + 1);
  for (std::size_t k = 0; k <= d; ++k) fsim[k] = detail::checked_call(f, sim[k], res.evaluations);

  auto sort_simplex = [&] {
    std::vector<std::size_t> order(d + 1);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fsim[a] < fsim[b]; });
    std::vector<std::vector<double>> s2;
    std::vector<double> f2;
    for (std::size_t k : order) {
      s2.push_back(std::move(sim[k]));
      f2.push_back(fsim[k]);
    }
    sim = std::move(s2);
    fsim = std::move(f2);
  };
  sort_simplex();

  std::vector<double> xbar(d), xr(d), xe(d), xc(d);
  res.iterations = 1;
  while (res.iterations < max_iterations) {
    double xspread = 0.0, fspread = 0.0;
    for (std::size_t k = 1; k <= d; ++k) {
      fspread = std::max(fspread, std::abs(fsim[0] - fsim[k]));
      for (std::size_t i = 0; i < d; ++i) xspread = std::max(xspread, std::abs(sim[k][i] - sim[0][i]));
    }
    if (xspread <= config.xatol && fspread <= config.fatol) {
      res.converged = true;
      break;
    }

    std::fill(xbar.begin(), xbar.end(), 0.0);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i) xbar[i] += sim[k][i] / static_cast<double>(d);
    const auto &worst = sim[d];
    for (std::size_t i = 0; i < d; ++i) xr[i] = (1 + rho) * xbar[i] - rho * worst[i];
    const double fxr = detail::checked_call(f, xr, res.evaluations);

    bool shrink = false;
    if (fxr < fsim[0]) {
      for (std::size_t i = 0; i < d; ++i) xe[i] = (1 + rho * chi) * xbar[i] - rho * chi * worst[i];
      const double fxe = detail::checked_call(f, xe, res.evaluations);
      if (fxe < fxr) {
        sim[d] = xe;
        fsim[d] = fxe;
      } else {
        sim[d] = xr;
        fsim[d] = fxr;
      }
    } else if (fxr < fsim[d - 1]) {
      sim[d] = xr;
      fsim[d] = fxr;
    } else if (fxr < fsim[d]) {
      for (std::size_t i = 0; i < d; ++i) xc[i] = (1 + psi * rho) * xbar[i] - psi * rho * worst[i];
      const double fxc = detail::checked_call(f, xc, res.evaluations);
      if (fxc <= fxr) {
        sim[d] = xc;
        fsim[d] = fxc;
      } else {
        shrink = true;
      }
    } else {
      for (std::size_t i = 0; i < d; ++i) xc[i] = (1 - psi) * xbar[i] + psi * worst[i];
      const double fxcc = detail::checked_call(f, xc, res.evaluations);
      if (fxcc < fsim[d]) {
        sim[d] = xc;
        fsim[d] = fxcc;
      } else {
        shrink = true;
      }
    }
    if (shrink) {
      for (std::size_t k = 1; k <= d; ++k) {
        for (std::size_t i = 0; i < d; ++i) sim[k][i] = sim[0][i] + sigma * (sim[k][i] - sim[0][i]);
        fsim[k] = detail::checked_call(f, sim[k], res.evaluations);
      }
    }
    ++res.iterations;
    sort_simplex();
  }
  res.x = sim[0];
  res.f = fsim[0];
  res.message = res.converged ? "simplex converged" : "iteration cap reached";
  return res;
}

} // namespace qaoa::optim
