#pragma once
/**
 * @file evaluator.hpp
 * @brief Expectation evaluators for the classical outer loop.
 *
 * - StatevectorEvaluator: exact <F_hat>; phase separation is applied as one
 *   diagonal pass over precomputed energies.
 * - SamplingEvaluator: sample mean of the energy over a finite number of shots.
 * - DensityEvaluator: depolarizing noise after every CNOT-level gate; exact
 *   <F_hat> of the noisy state, optionally replaced by a sample mean.
 *
 * All expectations are in the scaled units of the ansatz model.
 */

#include "qaoa/circuits.hpp"
#include "qaoa/rng.hpp"
#include "qaoa/sim/density_matrix.hpp"
#include "qaoa/sim/measure.hpp"
#include "qaoa/sim/noise.hpp"
#include "qaoa/sim/statevector.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace qaoa {

/// Single-qubit part of the Ising energy, -sum_i w_i Z_i, per basis state.
inline std::vector<double> field_energies(const IsingModel &model) {
  const std::size_t dim = std::size_t{1} << model.n;
  std::vector<double> e(dim, 0.0);
  for (int i = 0; i < model.n; ++i)
    for (std::size_t s = 0; s < dim; ++s) e[s] += ((s >> i) & 1U) ? model.w(i) : -model.w(i);
  return e;
}

namespace detail {
inline void apply_phase(StateVector &psi, std::span<const double> energies, double gamma, double offset) {
  auto amp = psi.data();
  for (std::size_t s = 0; s < amp.size(); ++s) amp[s] *= std::polar(1.0, -gamma * (energies[s] - offset));
}
/// Cached diagonal of the ansatz, or a fresh one in `storage` when absent.
inline std::span<const double> energies_of(const AnsatzCircuit &a, std::vector<double> &storage) {
  if (a.energies) return *a.energies;
  storage = diagonal_energies(a.model);
  return storage;
}
} // namespace detail

/// Noise-free final state. Equals the gate-by-gate simulation of
/// full_circuit() with a direct initial state.
inline StateVector simulate_statevector(const AnsatzCircuit &a, std::span<const double> gamma,
                                        std::span<const double> beta) {
  check_angles(a, gamma, beta);
  StateVector psi = a.mixer.initial == InitialState::dicke ? prepare_dicke(a.n, a.mixer.budget, DickeMode::direct)
                                                           : prepare_plus(a.n);
  const bool qampa = a.mixer.kind == MixerKind::qampa;
  std::vector<double> storage;
  if (!a.phase_energies) storage = qampa ? field_energies(a.model) : diagonal_energies(a.model);
  const std::span<const double> energies = a.phase_energies ? std::span<const double>(*a.phase_energies) : storage;
  const double offset = a.phase_energies || qampa ? 0.0 : a.model.c;
  for (int l = 0; l < a.p; ++l) {
    const double g = gamma[static_cast<std::size_t>(l)], b = beta[static_cast<std::size_t>(l)];
    detail::apply_phase(psi, energies, g, offset);
    if (qampa) {
      for (const auto &pr : a.mixer.pairs) psi.apply(gates::rxyzz(pr.first, pr.second, b, g * coupling(a.model, pr)));
    } else if (a.mixer.kind == MixerKind::standard) {
      for (int q = 0; q < a.n; ++q) psi.apply(gates::rx(q, -2.0 * b));
    } else {
      for (const auto &pr : a.mixer.pairs) psi.apply(gates::rxy(pr.first, pr.second, b));
    }
  }
  return psi;
}

/// Noisy final state. With noisy_preparation the channel also follows the
/// gates of the initial-state circuit.
inline DensityMatrix simulate_density(const AnsatzCircuit &a, std::span<const double> gamma,
                                      std::span<const double> beta, double eta, bool noisy_preparation = true) {
  check_angles(a, gamma, beta);
  DensityMatrix rho(a.n);
  const auto prep = state_preparation(a);
  if (noisy_preparation) apply_noisy(rho, prep, eta);
  else rho.apply(prep);
  apply_noisy(rho, bind_layers(a, gamma, beta), eta);
  return rho;
}

class Evaluator {
public:
  virtual ~Evaluator() = default;

  /// <F_hat> in the scaled units of the ansatz model.
  virtual double expectation(const AnsatzCircuit &a, std::span<const double> gamma, std::span<const double> beta) = 0;

  /// Distribution over basis states used for the reported r and P.
  virtual std::vector<double> final_probabilities(const AnsatzCircuit &a, std::span<const double> gamma,
                                                  std::span<const double> beta) = 0;

  /// True when expectation() is a deterministic smooth function of the angles.
  virtual bool exact() const = 0;
  virtual std::string name() const = 0;

  std::size_t evaluations() const { return evaluations_; }

protected:
  std::size_t evaluations_ = 0;
};

class StatevectorEvaluator final : public Evaluator {
public:
  double expectation(const AnsatzCircuit &a, std::span<const double> gamma, std::span<const double> beta) override {
    ++evaluations_;
    std::vector<double> storage;
    return expectation_diagonal(simulate_statevector(a, gamma, beta).probabilities(), detail::energies_of(a, storage));
  }
  std::vector<double> final_probabilities(const AnsatzCircuit &a, std::span<const double> gamma,
                                          std::span<const double> beta) override {
    return simulate_statevector(a, gamma, beta).probabilities();
  }
  bool exact() const override { return true; }
  std::string name() const override { return "statevector"; }
};

/// Shot-noise evaluator. Call k draws with seed derive_seed(seed, k), so a
/// run is reproducible from the seed and the call sequence.
class SamplingEvaluator final : public Evaluator {
public:
  SamplingEvaluator(std::uint64_t shots, std::uint64_t seed) : shots_(shots), seed_(seed) {
    if (shots < 1) throw std::invalid_argument("sampling evaluator: shots must be at least 1");
  }

  double expectation(const AnsatzCircuit &a, std::span<const double> gamma, std::span<const double> beta) override {
    const auto probs = simulate_statevector(a, gamma, beta).probabilities();
    const auto h = sample(probs, shots_, derive_seed(seed_, draws_++));
    ++evaluations_;
    double e = 0.0;
    for (const auto &[s, count] : h) e += static_cast<double>(count) * diagonal_energy(a.model, s);
    return e / static_cast<double>(shots_);
  }
  std::vector<double> final_probabilities(const AnsatzCircuit &a, std::span<const double> gamma,
                                          std::span<const double> beta) override {
    const auto probs = simulate_statevector(a, gamma, beta).probabilities();
    return frequencies(sample(probs, shots_, derive_seed(seed_, draws_++)), probs.size());
  }
  bool exact() const override { return false; }
  std::string name() const override { return "sampling"; }

private:
  std::uint64_t shots_;
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
};

struct DensityOptions {
  NoiseConfig noise;
  bool noisy_preparation = true;
  std::uint64_t optimization_shots = 0; ///< 0: exact expectation of the noisy state
  std::uint64_t final_shots = 8192;     ///< 0: exact final distribution
  std::uint64_t seed = 0;
};

class DensityEvaluator final : public Evaluator {
public:
  explicit DensityEvaluator(DensityOptions options) : options_(options) {}

  double eta_for(const AnsatzCircuit &a) const {
    return per_gate_eta(options_.noise, gate_count(a, options_.noisy_preparation));
  }

  double expectation(const AnsatzCircuit &a, std::span<const double> gamma, std::span<const double> beta) override {
    ++evaluations_;
    const auto rho = simulate_density(a, gamma, beta, eta_for(a), options_.noisy_preparation);
    std::vector<double> storage;
    if (options_.optimization_shots == 0) return expectation_diagonal(rho.probabilities(), detail::energies_of(a, storage));
    const auto h = sample(rho, options_.optimization_shots, derive_seed(options_.seed, draws_++));
    double e = 0.0;
    for (const auto &[s, count] : h) e += static_cast<double>(count) * diagonal_energy(a.model, s);
    return e / static_cast<double>(options_.optimization_shots);
  }
  std::vector<double> final_probabilities(const AnsatzCircuit &a, std::span<const double> gamma,
                                          std::span<const double> beta) override {
    const auto probs = simulate_density(a, gamma, beta, eta_for(a), options_.noisy_preparation).probabilities();
    if (options_.final_shots == 0) return probs;
    return frequencies(sample(probs, options_.final_shots, derive_seed(options_.seed, draws_++)), probs.size());
  }
  bool exact() const override { return false; }
  std::string name() const override { return "density"; }

  const DensityOptions &options() const { return options_; }

private:
  DensityOptions options_;
  std::uint64_t draws_ = 0;
};

} // namespace qaoa
