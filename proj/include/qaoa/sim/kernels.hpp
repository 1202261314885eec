#pragma once
// In-place amplitude kernels on a flat complex vector. Qubit k is bit k of the
// basis index. bit_offset shifts every target, which lets the density-matrix
// code address the row half of its vectorized index.

#include "qaoa/sim/gates.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <span>
#include <utility>

namespace qaoa::kernels {

inline void apply_1q(std::span<cplx> amp, int bit, const Mat2 &m) {
  const std::size_t stride = std::size_t{1} << bit;
  const std::size_t dim = amp.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride)
    for (std::size_t i = base; i < base + stride; ++i) {
      const cplx a0 = amp[i], a1 = amp[i + stride];
      amp[i] = m[0] * a0 + m[1] * a1;
      amp[i + stride] = m[2] * a0 + m[3] * a1;
    }
}

inline void apply_diag_1q(std::span<cplx> amp, int bit, cplx d0, cplx d1) {
  const std::size_t mask = std::size_t{1} << bit;
  for (std::size_t i = 0; i < amp.size(); ++i) amp[i] *= (i & mask) ? d1 : d0;
}

inline void apply_cnot(std::span<cplx> amp, int control, int target) {
  const std::size_t cmask = std::size_t{1} << control, tmask = std::size_t{1} << target;
  for (std::size_t i = 0; i < amp.size(); ++i)
    if ((i & cmask) && !(i & tmask)) std::swap(amp[i], amp[i | tmask]);
}

/// Multiplies amplitudes by `same` where the two bits agree and by `diff` otherwise.
inline void apply_parity_phase(std::span<cplx> amp, int b0, int b1, cplx same, cplx diff) {
  for (std::size_t i = 0; i < amp.size(); ++i) {
    const bool differ = (((i >> b0) ^ (i >> b1)) & 1U) != 0;
    amp[i] *= differ ? diff : same;
  }
}

/// Index with zero bits inserted at positions lo < hi.
inline std::size_t insert_two_zero_bits(std::size_t k, int lo, int hi) {
  const std::size_t lo_mask = (std::size_t{1} << lo) - 1;
  k = ((k & ~lo_mask) << 1) | (k & lo_mask);
  const std::size_t hi_mask = (std::size_t{1} << hi) - 1;
  return ((k & ~hi_mask) << 1) | (k & hi_mask);
}

/// General 4x4 on (b0, b1); local index is bit(b0) + 2 * bit(b1).
inline void apply_2q(std::span<cplx> amp, int b0, int b1, const Mat4 &m) {
  const int lo = std::min(b0, b1), hi = std::max(b0, b1);
  const std::size_t m0 = std::size_t{1} << b0, m1 = std::size_t{1} << b1;
  const std::size_t quarter = amp.size() / 4;
  for (std::size_t k = 0; k < quarter; ++k) {
    const std::size_t base = insert_two_zero_bits(k, lo, hi);
    const std::size_t idx[4] = {base, base | m0, base | m1, base | m0 | m1};
    cplx v[4];
    for (int r = 0; r < 4; ++r) v[r] = amp[idx[r]];
    for (int r = 0; r < 4; ++r) {
      cplx acc = 0.0;
      for (int c = 0; c < 4; ++c) acc += m[static_cast<std::size_t>(4 * r + c)] * v[c];
      amp[idx[r]] = acc;
    }
  }
}

/// Excitation-preserving gate: 00/11 times `same`, the {01, 10} block times
/// diff * [[c, s], [s, c]].
inline void apply_xy_block(std::span<cplx> amp, int b0, int b1, cplx c, cplx s, cplx same, cplx diff) {
  const int lo = std::min(b0, b1), hi = std::max(b0, b1);
  const std::size_t m0 = std::size_t{1} << b0, m1 = std::size_t{1} << b1;
  const std::size_t quarter = amp.size() / 4;
  const cplx dc = diff * c, ds = diff * s;
  for (std::size_t k = 0; k < quarter; ++k) {
    const std::size_t base = insert_two_zero_bits(k, lo, hi);
    amp[base] *= same;
    amp[base | m0 | m1] *= same;
    const cplx a01 = amp[base | m0], a10 = amp[base | m1];
    amp[base | m0] = dc * a01 + ds * a10;
    amp[base | m1] = ds * a01 + dc * a10;
  }
}

inline void apply_gate(std::span<cplx> amp, const Gate &g, int bit_offset = 0) {
  using namespace std::complex_literals;
  const int a = g.targets[0] + bit_offset, b = g.targets[1] + bit_offset;
  switch (g.kind) {
  case GateKind::RZ:
    apply_diag_1q(amp, a, std::exp(-0.5i * g.params[0]), std::exp(0.5i * g.params[0]));
    return;
  case GateKind::H:
  case GateKind::RX:
  case GateKind::U: apply_1q(amp, a, single_qubit_matrix(g)); return;
  case GateKind::CNOT: apply_cnot(amp, a, b); return;
  case GateKind::RZZ:
    apply_parity_phase(amp, a, b, std::exp(-1i * g.params[0]), std::exp(1i * g.params[0]));
    return;
  case GateKind::RXY:
  case GateKind::RXYZZ: {
    const double beta = g.params[0];
    const double theta = g.kind == GateKind::RXYZZ ? g.params[1] : 0.0;
    apply_xy_block(amp, a, b, std::cos(2 * beta), 1i * std::sin(2 * beta), std::exp(-1i * theta),
                   std::exp(1i * theta));
    return;
  }
  }
}

} // namespace qaoa::kernels
