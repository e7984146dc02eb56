#pragma once

#include <string>

#include "oamion/angular/harmonic.hpp"
#include "oamion/common.hpp"

namespace oamion::beam {

using angular::Polarization;

/// Which spatial form of the beam the propagator sees.
enum class BeamModel {
  Full,        // LG mode with Gaussian decay, Gouy and curvature phases, z-dependent carrier and window
  NearOrigin,  // (√2ρ/w0)^{|ℓ|} e^{iℓφ} polynomial core, profile and carrier taken at z = 0
};

/// Constant in front of the LG mode.
enum class LgNormalization {
  Allen,  // sqrt(2 p! / (π (p + |ℓ|)!)) / w(z)
  Unit,   // w0 / w(z): unit on-axis amplitude for ℓ = p = 0 at the waist
};

std::string to_string(BeamModel model);
BeamModel parse_beam_model(const std::string& name);
std::string to_string(LgNormalization norm);
LgNormalization parse_lg_normalization(const std::string& name);

/// Parameters of the pulsed LG vector potential, atomic units throughout.
///
/// A(r, t) = A0 ê w0 sin²(ω_e((z + a0)/c − t)) W(t, z) 2Re[e^{i(kz − ωt + χ)} LG_{ℓ,p}(ρ, φ, z)]
/// with ω_e = ω / (2 N_cyc) and W the indicator of t ∈ ((z + a0)/c, (z + a0)/c + N_cyc τ).
struct PulseConfig {
  double amplitude = 1.0e4;  // A0
  Polarization pol = Polarization::linear_x();
  double omega = 1.0;
  int n_cyc = 3;
  int ell = 1;
  int p = 0;
  double waist = 9.0e4;            // w0
  double chi = 0.0;                // carrier phase offset
  double origin_offset = kBohrRadius;  // a0 in the envelope argument; 0 switches it off
  Vec3 atom_displacement{};        // field is evaluated at r + atom_displacement
  LgNormalization normalization = LgNormalization::Allen;
  BeamModel model = BeamModel::NearOrigin;

  /// Throws std::invalid_argument on omega <= 0, n_cyc < 1, waist <= 0, p < 0 or a null polarization.
  void validate() const;

  double period() const { return 2.0 * kPi / omega; }
  double envelope_frequency() const { return kPi / (n_cyc * period()); }
  double duration() const { return n_cyc * period(); }
  double wavenumber() const { return omega / kSpeedOfLight; }
  double rayleigh_range() const { return 0.5 * wavenumber() * waist * waist; }

  /// Window opening time at longitudinal position z (beam frame).
  double window_start(double z) const { return (z + origin_offset) / kSpeedOfLight; }
  double window_end(double z) const { return window_start(z) + duration(); }
  /// Envelope maximum at z.
  double envelope_peak(double z) const { return window_start(z) + 0.5 * duration(); }

  friend bool operator==(const PulseConfig&, const PulseConfig&) = default;
};

/// Normalization constant of LG_{ℓ,p} (without the 1/w(z) factor for Allen).
double lg_constant(const PulseConfig& cfg);

/// LG_{ℓ,p}(ρ, φ, z; k) with the configured normalization.
Complex lg_mode(double rho, double phi, double z, double k, const PulseConfig& cfg);

/// A0 that puts the peak |E| at radius rho_ref (z = 0, envelope maximum,
/// best azimuth) at target_field, using |E| ≈ ω|A| for the carrier.
double amplitude_for_peak_field(const PulseConfig& cfg, double target_field, double rho_ref);

/// max_t |Re[ê e^{−iωt}]| for the normalized polarization.
double polarization_peak(const Polarization& pol);

}  // namespace oamion::beam
