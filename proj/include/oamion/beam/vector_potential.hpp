#pragma once

#include <vector>

#include "oamion/beam/pulse.hpp"

namespace oamion::beam {

/// Vector potential and electric field at one spacetime point. A_z = E_z = 0.
struct FieldSample {
  Vec3 A;
  Vec3 E;
};

/// The field factors as A = 2Re[ê T(t, z) U(x, y, z)]; E = −2Re[ê ∂T/∂t U].
///
/// T carries envelope, window and carrier (including χ); U carries A0 w0 and the
/// transverse mode. Coordinates here are beam-frame (atom displacement already applied).
Complex temporal_factor(double t, double z, const PulseConfig& cfg);
Complex temporal_factor_rate(double t, double z, const PulseConfig& cfg);

/// U for the full LG mode.
Complex full_profile(double x, double y, double z, const PulseConfig& cfg);

/// U for the near-origin core: A0 w0 K ζ^{|ℓ|} with ζ = x + i sgn(ℓ) y and
/// K = (C/w0) (√2/w0)^{|ℓ|} L_p^{|ℓ|}(0).
Complex near_origin_profile(double x, double y, const PulseConfig& cfg);

/// Coefficient A0 w0 K of the near-origin core.
double near_origin_coefficient(const PulseConfig& cfg);

/// ∫ U dx and ∫ U dy of the near-origin core (exact antiderivatives vanishing at ζ = 0).
Complex near_origin_profile_integral_x(double x, double y, const PulseConfig& cfg);
Complex near_origin_profile_integral_y(double x, double y, const PulseConfig& cfg);

/// Beam-frame position of grid point r.
inline Vec3 beam_frame(const Vec3& r, const PulseConfig& cfg) { return r + cfg.atom_displacement; }

/// Full vector potential at grid position r and time t; E by analytic time derivative.
FieldSample vector_potential(const Vec3& r, double t, const PulseConfig& cfg);

/// Near-origin reduction: Gaussian, Gouy, curvature and all z-dependence dropped.
FieldSample near_origin_potential(const Vec3& r, double t, const PulseConfig& cfg);

/// Dispatches on cfg.model.
FieldSample field(const Vec3& r, double t, const PulseConfig& cfg);

struct CepSample {
  double phi = 0.0;
  double cep = 0.0;  // unwrapped along the φ sequence
};

/// Carrier-envelope offset of the dominant transverse component of A(t) at
/// (radius, φ_j, z = 0), φ_j = 2πj/n_samples. The waveform there is
/// env(t) |a| cos(ω(t − t_peak) − cep).
std::vector<CepSample> cep_map(const PulseConfig& cfg, double radius, int n_samples = 72);

/// Cycle-averaged q²⟨A²⟩/2 at the envelope maximum, at grid position r.
double ponderomotive_energy(const Vec3& r, const PulseConfig& cfg, double charge = -1.0);

}  // namespace oamion::beam
