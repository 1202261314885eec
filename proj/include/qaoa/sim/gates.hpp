#pragma once
/**
 * @file gates.hpp
 * @brief Gate set of the QAOA ansatz circuits and their CNOT-level forms.
 *
 * Conventions
 *   RX(phi) = exp(-i phi/2 X),  RZ(phi) = exp(-i phi/2 Z)
 *   U(theta, phi, lam) = RZ(phi) RY(theta) RZ(lam)
 *   RXY(beta)          = exp(i beta (XX + YY))
 *   RZZ(theta)         = exp(-i theta ZZ)
 *   RXYZZ(beta, theta) = exp(i beta (XX + YY) - i theta ZZ)
 *   CNOT: targets[0] is the control.
 *
 * Two-qubit matrices use the local index b0 + 2*b1 where b0 is the bit of
 * targets[0]. decompose() lowers composite gates to {H, RX, RZ, U, CNOT}
 * with 2 (RXY), 2 (RZZ) and 3 (RXYZZ) CNOTs; lowered circuits agree with the
 * composite unitaries up to a global phase.
 */

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qaoa {

using cplx = std::complex<double>;
using Mat2 = std::array<cplx, 4>;  ///< row-major 2x2
using Mat4 = std::array<cplx, 16>; ///< row-major 4x4

enum class GateKind : std::uint8_t { H, RX, RZ, U, CNOT, RXY, RZZ, RXYZZ };

struct Gate {
  GateKind kind = GateKind::H;
  std::array<int, 2> targets{0, 0};
  std::array<double, 3> params{0.0, 0.0, 0.0};

  int arity() const {
    switch (kind) {
    case GateKind::H:
    case GateKind::RX:
    case GateKind::RZ:
    case GateKind::U: return 1;
    default: return 2;
    }
  }
};

namespace gates {
inline Gate h(int q) { return {GateKind::H, {q, q}, {}}; }
inline Gate rx(int q, double phi) { return {GateKind::RX, {q, q}, {phi, 0, 0}}; }
inline Gate rz(int q, double phi) { return {GateKind::RZ, {q, q}, {phi, 0, 0}}; }
inline Gate u(int q, double theta, double phi, double lam) { return {GateKind::U, {q, q}, {theta, phi, lam}}; }
inline Gate ry(int q, double theta) { return u(q, theta, 0.0, 0.0); }
inline Gate cnot(int control, int target) { return {GateKind::CNOT, {control, target}, {}}; }
inline Gate rxy(int i, int j, double beta) { return {GateKind::RXY, {i, j}, {beta, 0, 0}}; }
inline Gate rzz(int i, int j, double theta) { return {GateKind::RZZ, {i, j}, {theta, 0, 0}}; }
inline Gate rxyzz(int i, int j, double beta, double theta) { return {GateKind::RXYZZ, {i, j}, {beta, theta, 0}}; }
} // namespace gates

inline constexpr std::string_view to_string(GateKind kind) {
  switch (kind) {
  case GateKind::H: return "H";
  case GateKind::RX: return "RX";
  case GateKind::RZ: return "RZ";
  case GateKind::U: return "U";
  case GateKind::CNOT: return "CNOT";
  case GateKind::RXY: return "RXY";
  case GateKind::RZZ: return "RZZ";
  case GateKind::RXYZZ: return "RXYZZ";
  }
  return "?";
}

inline GateKind parse_gate_kind(std::string_view name) {
  for (auto k : {GateKind::H, GateKind::RX, GateKind::RZ, GateKind::U, GateKind::CNOT, GateKind::RXY, GateKind::RZZ,
                 GateKind::RXYZZ})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

inline int parameter_count(GateKind kind) {
  switch (kind) {
  case GateKind::H:
  case GateKind::CNOT: return 0;
  case GateKind::U: return 3;
  case GateKind::RXYZZ: return 2;
  default: return 1;
  }
}

inline bool is_cnot_level(const Gate &g) {
  return g.kind != GateKind::RXY && g.kind != GateKind::RZZ && g.kind != GateKind::RXYZZ;
}

inline void check_targets(const Gate &g, int n) {
  for (int k = 0; k < g.arity(); ++k)
    if (g.targets[static_cast<std::size_t>(k)] < 0 || g.targets[static_cast<std::size_t>(k)] >= n)
      throw std::out_of_range("gate " + std::string(to_string(g.kind)) + ": target out of range");
  if (g.arity() == 2 && g.targets[0] == g.targets[1])
    throw std::invalid_argument("gate " + std::string(to_string(g.kind)) + ": targets must be distinct");
}

inline Mat2 single_qubit_matrix(const Gate &g) {
  using namespace std::complex_literals;
  const double a = g.params[0];
  switch (g.kind) {
  case GateKind::H: {
    const double s = 1.0 / std::numbers::sqrt2;
    return {s, s, s, -s};
  }
  case GateKind::RX: return {std::cos(a / 2), -1i * std::sin(a / 2), -1i * std::sin(a / 2), std::cos(a / 2)};
  case GateKind::RZ: return {std::exp(-0.5i * a), 0.0, 0.0, std::exp(0.5i * a)};
  case GateKind::U: {
    const double c = std::cos(a / 2), s = std::sin(a / 2);
    const double phi = g.params[1], lam = g.params[2];
    return {std::exp(-0.5i * (phi + lam)) * c, -std::exp(-0.5i * (phi - lam)) * s,
            std::exp(0.5i * (phi - lam)) * s, std::exp(0.5i * (phi + lam)) * c};
  }
  default: throw std::invalid_argument("single_qubit_matrix: not a single-qubit gate");
  }
}

inline Mat4 two_qubit_matrix(const Gate &g) {
  using namespace std::complex_literals;
  Mat4 m{};
  auto at = [&m](int r, int c) -> cplx & { return m[static_cast<std::size_t>(4 * r + c)]; };
  switch (g.kind) {
  case GateKind::CNOT: // control = bit 0, target = bit 1
    at(0, 0) = 1.0;
    at(2, 2) = 1.0;
    at(3, 1) = 1.0;
    at(1, 3) = 1.0;
    return m;
  case GateKind::RZZ:
    at(0, 0) = at(3, 3) = std::exp(-1i * g.params[0]);
    at(1, 1) = at(2, 2) = std::exp(1i * g.params[0]);
    return m;
  case GateKind::RXY:
  case GateKind::RXYZZ: {
    const double beta = g.params[0];
    const double theta = g.kind == GateKind::RXYZZ ? g.params[1] : 0.0;
    const cplx same = std::exp(-1i * theta), diff = std::exp(1i * theta);
    at(0, 0) = at(3, 3) = same;
    at(1, 1) = at(2, 2) = diff * std::cos(2 * beta);
    at(1, 2) = at(2, 1) = diff * 1i * std::sin(2 * beta);
    return m;
  }
  default: throw std::invalid_argument("two_qubit_matrix: not a two-qubit gate");
  }
}

/// Gate whose matrix is the elementwise complex conjugate.
inline Gate conjugate(Gate g) {
  switch (g.kind) {
  case GateKind::H:
  case GateKind::CNOT: break;
  case GateKind::U:
    g.params[1] = -g.params[1];
    g.params[2] = -g.params[2];
    break;
  default:
    g.params[0] = -g.params[0];
    g.params[1] = -g.params[1];
    break;
  }
  return g;
}

/// Appends the CNOT-level form of g to out (g itself when already elementary).
inline void append_decomposition(std::vector<Gate> &out, const Gate &g) {
  using std::numbers::pi;
  const int a = g.targets[0], b = g.targets[1];
  switch (g.kind) {
  case GateKind::RZZ:
    out.push_back(gates::cnot(a, b));
    out.push_back(gates::rz(b, 2.0 * g.params[0]));
    out.push_back(gates::cnot(a, b));
    return;
  case GateKind::RXY: {
    // Basis change ZZ -> YY leaves XX invariant; CNOT (RX x RZ) CNOT = exp(-i(XX+ZZ)...).
    const double beta = g.params[0];
    out.push_back(gates::rx(a, -pi / 2));
    out.push_back(gates::rx(b, -pi / 2));
    out.push_back(gates::cnot(a, b));
    out.push_back(gates::rx(a, -2.0 * beta));
    out.push_back(gates::rz(b, -2.0 * beta));
    out.push_back(gates::cnot(a, b));
    out.push_back(gates::rx(a, pi / 2));
    out.push_back(gates::rx(b, pi / 2));
    return;
  }
  case GateKind::RXYZZ: {
    // Three-CNOT form of exp(i(x XX + y YY + z ZZ)) with x = y = beta, z = -theta.
    const double beta = g.params[0], theta = g.params[1];
    out.push_back(gates::rz(a, -pi / 2));
    out.push_back(gates::cnot(b, a));
    out.push_back(gates::rz(a, -pi / 2 + 2.0 * theta));
    out.push_back(gates::ry(b, -pi / 2 - 2.0 * beta));
    out.push_back(gates::cnot(a, b));
    out.push_back(gates::ry(b, pi / 2 + 2.0 * beta));
    out.push_back(gates::cnot(b, a));
    out.push_back(gates::rz(b, pi / 2));
    return;
  }
  default: out.push_back(g);
  }
}

inline std::vector<Gate> decompose(const Gate &g) {
  std::vector<Gate> out;
  append_decomposition(out, g);
  return out;
}

inline std::vector<Gate> lower(const std::vector<Gate> &circuit) {
  std::vector<Gate> out;
  out.reserve(circuit.size() * 4);
  for (const auto &g : circuit) append_decomposition(out, g);
  return out;
}

inline std::size_t count_cnots(const std::vector<Gate> &circuit) {
  std::size_t count = 0;
  for (const auto &g : circuit) {
    switch (g.kind) {
    case GateKind::CNOT: count += 1; break;
    case GateKind::RXY:
    case GateKind::RZZ: count += 2; break;
    case GateKind::RXYZZ: count += 3; break;
    default: break;
    }
  }
  return count;
}

} // namespace qaoa
