#pragma once
// Dense density matrix stored as a 2n-qubit vector: entry (r, c) lives at
// flat index (r << n) | c. A gate U acts as U on the row qubits (offset n)
// and as conj(U) on the column qubits, i.e. rho -> U rho U^dagger.

#include "qaoa/sim/noise.hpp"
#include "qaoa/sim/statevector.hpp"

#include <algorithm>
#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qaoa {

inline constexpr int kMaxDensityMatrixQubits = 14;

inline void require_density_matrix_size(int n) {
  if (n < 1) throw std::invalid_argument("density matrix: need at least one qubit");
  if (n > kMaxDensityMatrixQubits)
    throw std::length_error("density matrix: n = " + std::to_string(n) + " exceeds the memory bound of " +
                            std::to_string(kMaxDensityMatrixQubits) + " qubits");
}

class DensityMatrix {
public:
  /// |0...0><0...0|
  explicit DensityMatrix(int n) : n_(n) {
    require_density_matrix_size(n);
    data_.assign(std::size_t{1} << (2 * n), cplx{0.0, 0.0});
    data_[0] = 1.0;
  }

  static DensityMatrix from_statevector(const StateVector &psi) {
    DensityMatrix rho(psi.qubits());
    const std::size_t d = psi.dim();
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) rho.data_[(r << rho.n_) | c] = psi[r] * std::conj(psi[c]);
    return rho;
  }

  static DensityMatrix maximally_mixed(int n) {
    DensityMatrix rho(n);
    const std::size_t d = rho.dim();
    rho.data_[0] = 0.0;
    for (std::size_t s = 0; s < d; ++s) rho.data_[(s << n) | s] = 1.0 / static_cast<double>(d);
    return rho;
  }

  int qubits() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << n_; }
  cplx entry(std::size_t r, std::size_t c) const { return data_.at((r << n_) | c); }
  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  void apply(const Gate &g) {
    check_targets(g, n_);
    kernels::apply_gate(data_, g, n_);
    kernels::apply_gate(data_, conjugate(g), 0);
  }

  void apply(std::span<const Gate> circuit) {
    for (const auto &g : circuit) apply(g);
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t s = 0; s < dim(); ++s) t += data_[(s << n_) | s];
    return t;
  }

  std::vector<double> probabilities() const {
    std::vector<double> p(dim());
    for (std::size_t s = 0; s < dim(); ++s) p[s] = std::max(0.0, data_[(s << n_) | s].real());
    return p;
  }

private:
  int n_;
  std::vector<cplx> data_;
};

namespace detail {
/// Spreads the bits of k around zero bits at the (ascending) positions given.
inline std::size_t insert_zero_bits(std::size_t k, std::span<const int> positions) {
  for (int pos : positions) {
    const std::size_t low = (std::size_t{1} << pos) - 1;
    k = ((k & ~low) << 1) | (k & low);
  }
  return k;
}
} // namespace detail

/// Local depolarizing channel on one or two qubits:
///   rho -> (1 - eta) rho + eta (I_k / 2^k) (x) tr_k(rho).
inline void apply_depolarizing(DensityMatrix &rho, std::span<const int> qubits, double eta) {
  require_probability(eta);
  const int n = rho.qubits();
  const int k = static_cast<int>(qubits.size());
  if (k < 1 || k > 2) throw std::invalid_argument("apply_depolarizing: channel acts on one or two qubits");
  for (int q : qubits)
    if (q < 0 || q >= n) throw std::out_of_range("apply_depolarizing: qubit out of range");
  if (k == 2 && qubits[0] == qubits[1]) throw std::invalid_argument("apply_depolarizing: qubits must be distinct");
  if (eta == 0.0) return;

  // Flat-index bit masks of the local row/column bits, in local-index order.
  std::array<std::size_t, 2> row_mask{}, col_mask{};
  std::array<int, 4> positions{};
  for (int a = 0; a < k; ++a) {
    col_mask[static_cast<std::size_t>(a)] = std::size_t{1} << qubits[static_cast<std::size_t>(a)];
    row_mask[static_cast<std::size_t>(a)] = std::size_t{1} << (qubits[static_cast<std::size_t>(a)] + n);
    positions[static_cast<std::size_t>(2 * a)] = qubits[static_cast<std::size_t>(a)];
    positions[static_cast<std::size_t>(2 * a + 1)] = qubits[static_cast<std::size_t>(a)] + n;
  }
  std::span<int> pos(positions.data(), static_cast<std::size_t>(2 * k));
  std::sort(pos.begin(), pos.end());

  const std::size_t local = std::size_t{1} << k;
  auto offset = [&](std::size_t bits, const std::array<std::size_t, 2> &mask) {
    std::size_t o = 0;
    for (int a = 0; a < k; ++a)
      if ((bits >> a) & 1U) o |= mask[static_cast<std::size_t>(a)];
    return o;
  };
  std::array<std::size_t, 4> row_off{}, col_off{};
  for (std::size_t l = 0; l < local; ++l) {
    row_off[l] = offset(l, row_mask);
    col_off[l] = offset(l, col_mask);
  }

  auto data = rho.data();
  const std::size_t blocks = data.size() >> (2 * k);
  const double keep = 1.0 - eta, mix = eta / static_cast<double>(local);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t base = detail::insert_zero_bits(b, pos);
    cplx tr = 0.0;
    for (std::size_t l = 0; l < local; ++l) tr += data[base | row_off[l] | col_off[l]];
    for (std::size_t r = 0; r < local; ++r)
      for (std::size_t c = 0; c < local; ++c) {
        cplx &v = data[base | row_off[r] | col_off[c]];
        v *= keep;
        if (r == c) v += mix * tr;
      }
  }
}

inline void apply_depolarizing(DensityMatrix &rho, std::initializer_list<int> qubits, double eta) {
  apply_depolarizing(rho, std::span<const int>(qubits.begin(), qubits.size()), eta);
}

/// Applies each CNOT-level gate followed by the channel on its qubits.
inline void apply_noisy(DensityMatrix &rho, std::span<const Gate> circuit, double eta) {
  require_probability(eta);
  std::vector<Gate> lowered;
  for (const auto &g : circuit) {
    lowered.clear();
    append_decomposition(lowered, g);
    for (const auto &e : lowered) {
      rho.apply(e);
      if (e.arity() == 1) apply_depolarizing(rho, {e.targets[0]}, eta);
      else apply_depolarizing(rho, {e.targets[0], e.targets[1]}, eta);
    }
  }
}

} // namespace qaoa
