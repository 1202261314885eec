#pragma once
// Circuit dumps as JSON and statevector dumps as raw little-endian binary.
//
// State layout: 2^n pairs (re, im) of IEEE-754 doubles, little-endian,
// basis index order with qubit 0 as the least significant bit.

#include "qaoa/sim/gates.hpp"
#include "qaoa/sim/statevector.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qaoa {

inline nlohmann::json gate_to_json(const Gate &g) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(g.kind));
  std::vector<int> targets(g.targets.begin(), g.targets.begin() + g.arity());
  j["targets"] = targets;
  std::vector<double> params(g.params.begin(), g.params.begin() + parameter_count(g.kind));
  j["params"] = params;
  return j;
}

inline Gate gate_from_json(const nlohmann::json &j) {
  Gate g;
  g.kind = parse_gate_kind(j.at("kind").get<std::string>());
  const auto targets = j.at("targets").get<std::vector<int>>();
  const auto params = j.value("params", std::vector<double>{});
  if (static_cast<int>(targets.size()) != g.arity())
    throw std::invalid_argument("gate JSON: wrong number of targets for " + std::string(to_string(g.kind)));
  if (static_cast<int>(params.size()) != parameter_count(g.kind))
    throw std::invalid_argument("gate JSON: wrong number of parameters for " + std::string(to_string(g.kind)));
  g.targets = {targets[0], targets.size() > 1 ? targets[1] : targets[0]};
  for (std::size_t k = 0; k < params.size(); ++k) g.params[k] = params[k];
  return g;
}

inline nlohmann::json circuit_to_json(const std::vector<Gate> &circuit) {
  auto j = nlohmann::json::array();
  for (const auto &g : circuit) j.push_back(gate_to_json(g));
  return j;
}

inline std::vector<Gate> circuit_from_json(const nlohmann::json &j) {
  std::vector<Gate> out;
  for (const auto &e : j) out.push_back(gate_from_json(e));
  return out;
}

namespace detail {
inline void put_le(std::ostream &out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  std::array<char, 8> b{};
  for (auto &c : b) {
    c = static_cast<char>(bits & 0xFFU);
    bits >>= 8;
  }
  out.write(b.data(), 8);
}

inline double get_le(std::istream &in) {
  std::array<unsigned char, 8> b{};
  if (!in.read(reinterpret_cast<char *>(b.data()), 8)) throw std::runtime_error("state dump: truncated input");
  std::uint64_t bits = 0;
  for (int k = 7; k >= 0; --k) bits = (bits << 8) | b[static_cast<std::size_t>(k)];
  return std::bit_cast<double>(bits);
}
} // namespace detail

inline void write_state(std::ostream &out, const StateVector &psi) {
  for (const auto &a : psi.amplitudes()) {
    detail::put_le(out, a.real());
    detail::put_le(out, a.imag());
  }
}

inline StateVector read_state(std::istream &in, int n) {
  require_statevector_size(n);
  std::vector<cplx> amp(std::size_t{1} << n);
  for (auto &a : amp) {
    const double re = detail::get_le(in);
    a = {re, detail::get_le(in)};
  }
  return StateVector::from_amplitudes(n, std::move(amp));
}

} // namespace qaoa
