#pragma once
// Dense n-qubit statevector. Basis index bit k is qubit k.

#include "qaoa/ising.hpp"
#include "qaoa/sim/kernels.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qaoa {

inline void require_statevector_size(int n) {
  if (n < 1) throw std::invalid_argument("statevector: need at least one qubit");
  if (n > kMaxStatevectorQubits)
    throw std::length_error("statevector: n = " + std::to_string(n) + " exceeds the memory bound of " +
                            std::to_string(kMaxStatevectorQubits) + " qubits");
}

class StateVector {
public:
  /// |0...0>
  explicit StateVector(int n) : n_(n) {
    require_statevector_size(n);
    amp_.assign(std::size_t{1} << n, cplx{0.0, 0.0});
    amp_[0] = 1.0;
  }

  static StateVector from_amplitudes(int n, std::vector<cplx> amplitudes) {
    StateVector s(n);
    if (amplitudes.size() != s.amp_.size()) throw std::invalid_argument("statevector: amplitude count is not 2^n");
    s.amp_ = std::move(amplitudes);
    return s;
  }

  int qubits() const { return n_; }
  std::size_t dim() const { return amp_.size(); }
  std::span<const cplx> amplitudes() const { return amp_; }
  std::span<cplx> data() { return amp_; }
  cplx operator[](std::size_t i) const { return amp_[i]; }

  void apply(const Gate &g) {
    check_targets(g, n_);
    kernels::apply_gate(amp_, g);
  }

  void apply(std::span<const Gate> circuit) {
    for (const auto &g : circuit) apply(g);
  }

  /// Multiplies amplitude s by phases[s].
  void apply_diagonal(std::span<const cplx> phases) {
    if (phases.size() != amp_.size()) throw std::invalid_argument("statevector: diagonal size mismatch");
    for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] *= phases[i];
  }

  double norm_squared() const {
    double s = 0.0;
    for (const auto &a : amp_) s += std::norm(a);
    return s;
  }

  std::vector<double> probabilities() const {
    std::vector<double> p(amp_.size());
    for (std::size_t i = 0; i < amp_.size(); ++i) p[i] = std::norm(amp_[i]);
    return p;
  }

private:
  int n_;
  std::vector<cplx> amp_;
};

inline StateVector prepare_plus(int n) {
  require_statevector_size(n);
  const double a = std::pow(2.0, -0.5 * n);
  return StateVector::from_amplitudes(n, std::vector<cplx>(std::size_t{1} << n, cplx{a, 0.0}));
}

inline double inner_product_abs(const StateVector &a, const StateVector &b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner product: dimension mismatch");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return std::abs(acc);
}

} // namespace qaoa
