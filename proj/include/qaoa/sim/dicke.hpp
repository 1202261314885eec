#pragma once
// Dicke-state preparation for the XY mixers. A weight-B state in portfolio
// space carries n - B ones in qubit space (|0> = asset held).
//
// Network mode builds the deterministic split-and-cyclic-shift circuit of
// Baertschi and Eidenbenz from |0^(n-k) 1^k> using only RX, U(RY), CNOT.

#include "qaoa/ising.hpp"
#include "qaoa/sim/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qaoa {

enum class DickeMode { network, direct };

inline void require_dicke_budget(int n, int budget) {
  if (!(budget > 0 && budget < n)) throw std::invalid_argument("dicke: budget must satisfy 0 < B < n");
}

namespace detail {
inline void append_cry(std::vector<Gate> &out, int control, int target, double theta) {
  out.push_back(gates::ry(target, theta / 2));
  out.push_back(gates::cnot(control, target));
  out.push_back(gates::ry(target, -theta / 2));
  out.push_back(gates::cnot(control, target));
}

inline void append_ccry(std::vector<Gate> &out, int c1, int c2, int target, double theta) {
  append_cry(out, c2, target, theta / 2);
  out.push_back(gates::cnot(c1, c2));
  append_cry(out, c2, target, -theta / 2);
  out.push_back(gates::cnot(c1, c2));
  append_cry(out, c1, target, theta / 2);
}

/// Split & cyclic shift on x_{l-k} .. x_l (1-based labels, qubit = label - 1).
inline void append_scs(std::vector<Gate> &out, int l, int k) {
  auto x = [](int label) { return label - 1; };
  const double ld = static_cast<double>(l);
  out.push_back(gates::cnot(x(l - 1), x(l)));
  append_cry(out, x(l), x(l - 1), 2.0 * std::acos(std::sqrt(1.0 / ld)));
  out.push_back(gates::cnot(x(l - 1), x(l)));
  for (int i = 2; i <= k; ++i) {
    out.push_back(gates::cnot(x(l - i), x(l)));
    append_ccry(out, x(l), x(l - i + 1), x(l - i), 2.0 * std::acos(std::sqrt(i / ld)));
    out.push_back(gates::cnot(x(l - i), x(l)));
  }
}
} // namespace detail

/// Gate network taking |0...0> to the Dicke state of portfolio weight B
/// (up to a global phase).
inline std::vector<Gate> dicke_circuit(int n, int budget) {
  require_dicke_budget(n, budget);
  const int k = n - budget; // ones in qubit space
  std::vector<Gate> out;
  for (int q = n - k; q < n; ++q) out.push_back(gates::rx(q, std::numbers::pi));
  for (int l = n; l > k; --l) detail::append_scs(out, l, k);
  for (int l = k; l >= 2; --l) detail::append_scs(out, l, l - 1);
  return out;
}

inline StateVector prepare_dicke(int n, int budget, DickeMode mode = DickeMode::network) {
  require_statevector_size(n);
  require_dicke_budget(n, budget);
  if (mode == DickeMode::direct) {
    std::vector<cplx> amp(std::size_t{1} << n, cplx{0.0, 0.0});
    std::size_t count = 0;
    for (std::uint64_t s = 0; s < amp.size(); ++s)
      if (std::popcount(decode(n, s)) == budget) ++count;
    const double a = 1.0 / std::sqrt(static_cast<double>(count));
    for (std::uint64_t s = 0; s < amp.size(); ++s)
      if (std::popcount(decode(n, s)) == budget) amp[s] = a;
    return StateVector::from_amplitudes(n, std::move(amp));
  }
  StateVector psi(n);
  psi.apply(dicke_circuit(n, budget));
  // Remove the global phase picked up by the RX(pi) flips.
  std::size_t ref = 0;
  for (std::size_t s = 0; s < psi.dim(); ++s)
    if (std::abs(psi[s]) > std::abs(psi[ref])) ref = s;
  const cplx phase = std::conj(psi[ref]) / std::abs(psi[ref]);
  for (auto &a : psi.data()) a *= phase;
  return psi;
}

} // namespace qaoa
