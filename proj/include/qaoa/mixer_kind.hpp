#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qaoa {

enum class MixerKind { standard, ring, par_ring, full, qampa };

inline constexpr std::array<MixerKind, 5> kAllMixers = {MixerKind::standard, MixerKind::ring, MixerKind::par_ring,
                                                         MixerKind::full, MixerKind::qampa};

inline constexpr std::string_view to_string(MixerKind kind) {
  switch (kind) {
  case MixerKind::standard: return "standard";
  case MixerKind::ring: return "ring";
  case MixerKind::par_ring: return "par_ring";
  case MixerKind::full: return "full";
  case MixerKind::qampa: return "qampa";
  }
  return "unknown";
}

inline MixerKind parse_mixer(std::string_view name) {
  for (MixerKind k : kAllMixers)
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown mixer '" + std::string(name) + "'");
}

/// XY mixers keep the Hamming weight fixed and start from a Dicke state.
inline constexpr bool is_xy(MixerKind kind) { return kind != MixerKind::standard; }

/// Spectral width of the mixing operator: 2n for standard and ring mixers,
/// n(n-1) for the all-pairs mixers.
inline constexpr double mixer_spectral_width(MixerKind kind, int n) {
  switch (kind) {
  case MixerKind::standard:
  case MixerKind::ring:
  case MixerKind::par_ring: return 2.0 * n;
  case MixerKind::full:
  case MixerKind::qampa: return static_cast<double>(n) * (n - 1);
  }
  return 0.0;
}

} // namespace qaoa
