#pragma once

#include <cstddef>
#include <stdexcept>

namespace qaoa {

/// Depolarizing noise. When `normalized` is set the per-gate strength is
/// eta_tilde divided by the CNOT-level gate count of the circuit.
struct NoiseConfig {
  double eta = 0.0;
  bool normalized = false;
  double eta_tilde = 0.0;
};

inline void require_probability(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("depolarizing strength must lie in [0, 1]");
}

inline double normalize_noise(double eta_tilde, std::size_t gate_count) {
  if (gate_count == 0) throw std::invalid_argument("normalize_noise: gate count must be at least 1");
  if (!(eta_tilde >= 0.0)) throw std::invalid_argument("normalize_noise: eta_tilde must be non-negative");
  const double eta = eta_tilde / static_cast<double>(gate_count);
  require_probability(eta);
  return eta;
}

inline double per_gate_eta(const NoiseConfig &config, std::size_t gate_count) {
  if (config.normalized) return normalize_noise(config.eta_tilde, gate_count);
  require_probability(config.eta);
  return config.eta;
}

inline bool is_noiseless(const NoiseConfig &config) {
  return config.normalized ? config.eta_tilde == 0.0 : config.eta == 0.0;
}

} // namespace qaoa
