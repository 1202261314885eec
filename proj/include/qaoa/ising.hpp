#pragma once
/**
 * @file ising.hpp
 * @brief Ising encoding of the penalized portfolio cost.
 *
 * The operator lambda * F^A((I+Z_1)/2, ..., (I+Z_n)/2) is written as
 *
 *     F_hat = sum_{i<j} W_ij Z_i Z_j - sum_i w_i Z_i + c
 *     W_ij  = (lambda/2) (q sigma_ij + A)
 *     w_i   = (lambda/2) [(1-q) mu_i + A (2B - n) - q sum_j sigma_ij]
 *
 * Because (I+Z)/2 has eigenvalue 1 on |0>, qubit j in |0> means asset j is
 * held. Basis index bit j is qubit j, so a basis index maps to the selection
 * ~index (masked to n bits); decode()/basis_index() convert between the two.
 */

#include "qaoa/mixer_kind.hpp"
#include "qaoa/problem.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qaoa {

/// Largest statevector register the dense simulators accept.
inline constexpr int kMaxStatevectorQubits = 24;

struct IsingModel {
  int n = 0;
  Eigen::MatrixXd W; ///< couplings, only i < j is used
  Eigen::VectorXd w; ///< fields
  double c = 0.0;    ///< constant offset
  double lambda = 1.0;
  /// lambda times every later rescaling; energy / cumulative_scale is in
  /// cost units of F^A.
  double cumulative_scale = 1.0;
};

inline constexpr std::uint64_t mask_bits(int n) { return (std::uint64_t{1} << n) - 1; }

/// Portfolio selection carried by a computational basis state.
inline constexpr Selection decode(int n, std::uint64_t basis_index) { return ~basis_index & mask_bits(n); }

/// Computational basis state carrying a portfolio selection.
inline constexpr std::uint64_t basis_index(int n, Selection z) { return ~z & mask_bits(n); }

namespace detail {
inline double ising_terms(const IsingModel &m, std::uint64_t s) {
  double e = 0.0;
  for (int i = 0; i < m.n; ++i) {
    const double zi = ((s >> i) & 1U) ? -1.0 : 1.0;
    e -= m.w(i) * zi;
    for (int j = i + 1; j < m.n; ++j) {
      const double zj = ((s >> j) & 1U) ? -1.0 : 1.0;
      e += m.W(i, j) * zi * zj;
    }
  }
  return e;
}
} // namespace detail

inline IsingModel encode(const ProblemInstance &instance, const PenaltyConfig &penalty, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("encode: lambda must be positive");
  if (!(penalty.A >= 0.0)) throw std::invalid_argument("encode: penalty factor must be non-negative");
  const int n = instance.size();
  const double q = instance.risk, A = penalty.A;
  const auto &sigma = instance.stats.sigma;

  IsingModel m;
  m.n = n;
  m.lambda = lambda;
  m.cumulative_scale = lambda;
  m.W = Eigen::MatrixXd::Zero(n, n);
  m.w.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) m.W(i, j) = 0.5 * lambda * (q * sigma(i, j) + A);
    m.w(i) = 0.5 * lambda *
             ((1.0 - q) * instance.stats.mu(i) + A * (2.0 * instance.budget - n) - q * sigma.row(i).sum());
  }
  // Offset fixed on the all-|0> state (every asset held).
  const Selection everything = mask_bits(n);
  m.c = lambda * penalized_cost(instance, penalty, everything) - detail::ising_terms(m, 0);
  return m;
}

inline double diagonal_energy(const IsingModel &model, std::uint64_t basis) {
  if (basis >= (std::uint64_t{1} << model.n)) throw std::out_of_range("diagonal_energy: basis index out of range");
  return detail::ising_terms(model, basis) + model.c;
}

/// All 2^n eigenvalues, indexed by basis state.
inline std::vector<double> diagonal_energies(const IsingModel &model) {
  if (model.n > kMaxStatevectorQubits) throw std::invalid_argument("diagonal_energies: too many qubits");
  const std::size_t dim = std::size_t{1} << model.n;
  std::vector<double> e(dim, model.c);
  // Accumulate term by term; each pass is a sign pattern over the index.
  for (int i = 0; i < model.n; ++i) {
    const double wi = model.w(i);
    for (std::size_t s = 0; s < dim; ++s) e[s] += ((s >> i) & 1U) ? wi : -wi;
    for (int j = i + 1; j < model.n; ++j) {
      const double wij = model.W(i, j);
      if (wij == 0.0) continue;
      for (std::size_t s = 0; s < dim; ++s) e[s] += (((s >> i) ^ (s >> j)) & 1U) ? -wij : wij;
    }
  }
  return e;
}

/// Energy expressed in cost units of F^A.
inline double unscaled(const IsingModel &model, double energy) { return energy / model.cumulative_scale; }

/// lambda = dM / dF with dF = F_max - F_min for XY mixers and
/// dF = sqrt((F_max - F_min)(F^nf_max - F_min)) for the standard mixer.
/// `summary` must have been computed with the same penalty.
inline double spectral_scaling(const ProblemInstance &instance, const PenaltyConfig &penalty,
                               const OracleSummary &summary, MixerKind kind) {
  if (summary.n != instance.size() || summary.penalty != penalty.A)
    throw std::invalid_argument("spectral_scaling: summary does not match instance/penalty");
  const double feasible_width = summary.f_max - summary.f_min;
  const double width = is_xy(kind) ? feasible_width
                                   : std::sqrt(feasible_width * (summary.f_max_nf - summary.f_min));
  if (!(width > 0.0)) throw std::domain_error("spectral_scaling: degenerate cost landscape");
  return mixer_spectral_width(kind, instance.size()) / width;
}

inline IsingModel rescale(IsingModel model, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("rescale: factor must be positive");
  model.W *= mu;
  model.w *= mu;
  model.c *= mu;
  model.cumulative_scale *= mu;
  return model;
}

} // namespace qaoa
