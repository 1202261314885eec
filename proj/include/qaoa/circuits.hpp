#pragma once
/**
 * @file circuits.hpp
 * @brief QAOA ansatz circuits for the five mixers.
 *
 * One layer with angles (gamma, beta):
 *
 *   standard, ring, par_ring, full:
 *     RZ(-2 gamma w_i) on every qubit, RZZ(gamma W_ij) per pair, then U_M(beta)
 *   qampa:
 *     RZ(-2 gamma w_i) on every qubit, then RXYZZ(beta, gamma W_ij) over S_full
 *
 * so that the phase separator is exactly exp(-i gamma F_hat) up to the global
 * phase of the constant c. The standard mixer is RX(-2 beta) = exp(i beta X)
 * on every qubit; XY mixers apply RXY(beta) along their pair order.
 */

#include "qaoa/ising.hpp"
#include "qaoa/mixer_kind.hpp"
#include "qaoa/sim/dicke.hpp"
#include "qaoa/sim/gates.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <memory>
#include <vector>

namespace qaoa {

using QubitPair = std::pair<int, int>;

/// Commuting subsets of the all-pairs mixer, 0-based.
///
/// Odd n: subset k (k = 1..n) holds the (n-1)/2 pairs with i + j = k mod n.
/// Even n: subsets of n-1, each extended by (uncovered qubit, n).
inline std::vector<std::vector<QubitPair>> full_subsets(int n) {
  if (n < 2) throw std::invalid_argument("full mixer needs n >= 2");
  if (n % 2 == 0) {
    auto subsets = n == 2 ? std::vector<std::vector<QubitPair>>(1) : full_subsets(n - 1);
    for (auto &s : subsets) {
      std::vector<bool> covered(static_cast<std::size_t>(n - 1), false);
      for (auto [i, j] : s) covered[static_cast<std::size_t>(i)] = covered[static_cast<std::size_t>(j)] = true;
      for (int v = 0; v < n - 1; ++v)
        if (!covered[static_cast<std::size_t>(v)]) {
          s.emplace_back(v, n - 1);
          break;
        }
    }
    return subsets;
  }
  std::vector<std::vector<QubitPair>> subsets;
  for (int k = 1; k <= n; ++k) {
    std::vector<QubitPair> s;
    for (int t = 0; t <= (n - 3) / 2; ++t) {
      const int i = k / 2 + 1 + t;                    // 1-based
      const int j = ((k - i - 1) % n + n) % n + 1;    // i + j = k (mod n)
      s.emplace_back(i - 1, j - 1);
    }
    subsets.push_back(std::move(s));
  }
  return subsets;
}

/// Ordered pair list S_M (0-based). Empty for the standard mixer.
inline std::vector<QubitPair> pair_order(MixerKind kind, int n) {
  std::vector<QubitPair> pairs;
  switch (kind) {
  case MixerKind::standard: return pairs;
  case MixerKind::ring:
    if (n < 3) throw std::invalid_argument("ring mixer needs n >= 3");
    for (int i = 0; i < n; ++i) pairs.emplace_back(i, (i + 1) % n);
    return pairs;
  case MixerKind::par_ring:
    if (n < 3) throw std::invalid_argument("par_ring mixer needs n >= 3");
    for (int i = 0; i < n; i += 2) pairs.emplace_back(i, (i + 1) % n);
    for (int i = 1; i < n; i += 2) pairs.emplace_back(i, (i + 1) % n);
    return pairs;
  case MixerKind::full:
  case MixerKind::qampa:
    for (const auto &s : full_subsets(n)) pairs.insert(pairs.end(), s.begin(), s.end());
    return pairs;
  }
  return pairs;
}

enum class InitialState { plus, dicke };

struct MixerSpec {
  MixerKind kind = MixerKind::standard;
  std::vector<QubitPair> pairs;
  InitialState initial = InitialState::plus;
  int budget = 0; ///< Dicke weight in portfolio space
};

inline MixerSpec make_mixer(MixerKind kind, int n, int budget) {
  MixerSpec m;
  m.kind = kind;
  m.pairs = pair_order(kind, n);
  m.initial = is_xy(kind) ? InitialState::dicke : InitialState::plus;
  m.budget = budget;
  if (m.initial == InitialState::dicke) require_dicke_budget(n, budget);
  return m;
}

/// Circuit template: gates follow from (model, mixer) once the 2p angles are bound.
struct AnsatzCircuit {
  int n = 0;
  int p = 1;
  MixerSpec mixer;
  IsingModel model;
  std::vector<QubitPair> zz_pairs; ///< phase-separation pairs in application order
  /// Diagonal of F_hat per basis index, filled by build_ansatz.
  std::shared_ptr<const std::vector<double>> energies;
  /// Diagonal phased by the fast simulation path: F_hat - c, or only the
  /// single-qubit part for QAMPA whose couplings live in the mixer gates.
  std::shared_ptr<const std::vector<double>> phase_energies;
};

inline AnsatzCircuit build_ansatz(const IsingModel &model, const MixerSpec &mixer, int p) {
  if (p < 1) throw std::invalid_argument("build_ansatz: depth p must be at least 1");
  for (auto [i, j] : mixer.pairs)
    if (i < 0 || j < 0 || i >= model.n || j >= model.n || i == j)
      throw std::invalid_argument("build_ansatz: mixer pairs do not fit the model");
  if (mixer.kind != MixerKind::standard && mixer.pairs.empty())
    throw std::invalid_argument("build_ansatz: XY mixer without pairs");

  AnsatzCircuit a{model.n, p, mixer, model, {}, nullptr, nullptr};
  if (mixer.kind == MixerKind::full || mixer.kind == MixerKind::qampa) {
    a.zz_pairs = mixer.pairs;
  } else {
    for (int i = 0; i < model.n; ++i)
      for (int j = i + 1; j < model.n; ++j) a.zz_pairs.emplace_back(i, j);
  }
  auto diag = diagonal_energies(model);
  if (mixer.kind == MixerKind::qampa) {
    std::vector<double> field(diag.size(), 0.0);
    for (int i = 0; i < model.n; ++i)
      for (std::size_t s = 0; s < field.size(); ++s) field[s] += ((s >> i) & 1U) ? model.w(i) : -model.w(i);
    a.phase_energies = std::make_shared<const std::vector<double>>(std::move(field));
  } else {
    std::vector<double> shifted(diag);
    for (double &e : shifted) e -= model.c;
    a.phase_energies = std::make_shared<const std::vector<double>>(std::move(shifted));
  }
  a.energies = std::make_shared<const std::vector<double>>(std::move(diag));
  return a;
}

inline double coupling(const IsingModel &model, QubitPair pair) {
  const auto [i, j] = pair;
  return i < j ? model.W(i, j) : model.W(j, i);
}

inline void check_angles(const AnsatzCircuit &a, std::span<const double> gamma, std::span<const double> beta) {
  if (gamma.size() != static_cast<std::size_t>(a.p) || beta.size() != static_cast<std::size_t>(a.p))
    throw std::invalid_argument("ansatz expects " + std::to_string(a.p) + " gamma and beta angles");
}

inline std::vector<Gate> state_preparation(const AnsatzCircuit &a) {
  std::vector<Gate> out;
  if (a.mixer.initial == InitialState::dicke) return dicke_circuit(a.n, a.mixer.budget);
  for (int q = 0; q < a.n; ++q) out.push_back(gates::h(q));
  return out;
}

/// One layer at composite-gate level.
inline void append_layer(std::vector<Gate> &out, const AnsatzCircuit &a, double gamma, double beta) {
  for (int q = 0; q < a.n; ++q) out.push_back(gates::rz(q, -2.0 * gamma * a.model.w(q)));
  if (a.mixer.kind == MixerKind::qampa) {
    for (const auto &pr : a.mixer.pairs)
      out.push_back(gates::rxyzz(pr.first, pr.second, beta, gamma * coupling(a.model, pr)));
    return;
  }
  for (const auto &pr : a.zz_pairs) {
    const double wij = coupling(a.model, pr);
    if (wij != 0.0) out.push_back(gates::rzz(pr.first, pr.second, gamma * wij));
  }
  if (a.mixer.kind == MixerKind::standard) {
    for (int q = 0; q < a.n; ++q) out.push_back(gates::rx(q, -2.0 * beta));
  } else {
    for (const auto &pr : a.mixer.pairs) out.push_back(gates::rxy(pr.first, pr.second, beta));
  }
}

/// Layers only (no state preparation), composite level.
inline std::vector<Gate> bind_layers(const AnsatzCircuit &a, std::span<const double> gamma, std::span<const double> beta) {
  check_angles(a, gamma, beta);
  std::vector<Gate> out;
  for (int l = 0; l < a.p; ++l) append_layer(out, a, gamma[static_cast<std::size_t>(l)], beta[static_cast<std::size_t>(l)]);
  return out;
}

/// State preparation followed by the layers, composite level.
inline std::vector<Gate> full_circuit(const AnsatzCircuit &a, std::span<const double> gamma,
                                      std::span<const double> beta) {
  auto out = state_preparation(a);
  const auto layers = bind_layers(a, gamma, beta);
  out.insert(out.end(), layers.begin(), layers.end());
  return out;
}

/// CNOTs of the ansatz layers (state preparation excluded).
inline std::size_t cnot_count(const AnsatzCircuit &a) {
  const std::vector<double> zeros(static_cast<std::size_t>(a.p), 0.0);
  return count_cnots(bind_layers(a, zeros, zeros));
}

/// Gates of the CNOT-level circuit, single-qubit gates included. This is
/// the size used to normalize the noise strength.
inline std::size_t gate_count(const AnsatzCircuit &a, bool include_state_preparation = true) {
  const std::vector<double> zeros(static_cast<std::size_t>(a.p), 0.0);
  auto gates = include_state_preparation ? full_circuit(a, zeros, zeros) : bind_layers(a, zeros, zeros);
  return lower(gates).size();
}

} // namespace qaoa
