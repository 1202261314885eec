#pragma once
// Diagonal expectation values and multinomial measurement sampling.

#include "qaoa/ising.hpp"
#include "qaoa/rng.hpp"
#include "qaoa/sim/density_matrix.hpp"
#include "qaoa/sim/statevector.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace qaoa {

/// Counts per computational basis index.
using Histogram = std::map<std::uint64_t, std::uint64_t>;

inline double expectation_diagonal(std::span<const double> probabilities, std::span<const double> energies) {
  if (probabilities.size() != energies.size()) throw std::invalid_argument("expectation: dimension mismatch");
  double e = 0.0;
  for (std::size_t s = 0; s < energies.size(); ++s) e += probabilities[s] * energies[s];
  return e;
}

inline double expectation_diagonal(const StateVector &psi, const IsingModel &model) {
  if (psi.qubits() != model.n) throw std::invalid_argument("expectation: state and model sizes differ");
  return expectation_diagonal(psi.probabilities(), diagonal_energies(model));
}

inline double expectation_diagonal(const DensityMatrix &rho, const IsingModel &model) {
  if (rho.qubits() != model.n) throw std::invalid_argument("expectation: state and model sizes differ");
  return expectation_diagonal(rho.probabilities(), diagonal_energies(model));
}

/// Multinomial draw of `shots` outcomes; identical for identical seeds.
inline Histogram sample(std::span<const double> probabilities, std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sample: shots must be at least 1");
  std::vector<double> cumulative(probabilities.size());
  double total = 0.0;
  for (std::size_t s = 0; s < probabilities.size(); ++s) {
    total += std::max(0.0, probabilities[s]);
    cumulative[s] = total;
  }
  if (!(total > 0.0)) throw std::invalid_argument("sample: probabilities sum to zero");

  CounterRng rng(seed);
  Histogram h;
  for (std::uint64_t k = 0; k < shots; ++k) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) it = std::lower_bound(cumulative.begin(), cumulative.end(), total);
    ++h[static_cast<std::uint64_t>(it - cumulative.begin())];
  }
  return h;
}

inline Histogram sample(const StateVector &psi, std::uint64_t shots, std::uint64_t seed) {
  return sample(psi.probabilities(), shots, seed);
}

inline Histogram sample(const DensityMatrix &rho, std::uint64_t shots, std::uint64_t seed) {
  return sample(rho.probabilities(), shots, seed);
}

/// Empirical distribution over basis indices.
inline std::vector<double> frequencies(const Histogram &h, std::size_t dim) {
  std::vector<double> f(dim, 0.0);
  std::uint64_t total = 0;
  for (const auto &[s, count] : h) total += count;
  for (const auto &[s, count] : h) f.at(s) = static_cast<double>(count) / static_cast<double>(total);
  return f;
}

/// Re-indexes a basis-state distribution by portfolio selection.
inline Distribution to_selection_distribution(std::span<const double> basis_probabilities, int n) {
  Distribution d(basis_probabilities.size(), 0.0);
  for (std::uint64_t s = 0; s < basis_probabilities.size(); ++s) d[decode(n, s)] = basis_probabilities[s];
  return d;
}

} // namespace qaoa
