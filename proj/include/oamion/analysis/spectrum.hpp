#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "oamion/angular/harmonic.hpp"
#include "oamion/tdse/grid.hpp"

namespace oamion::analysis {

using angular::HarmonicIndex;
using tdse::Wavefunction;

/// P_{L,M} = ∫_0^{r_max} r² |u_{L,M}(r)|² dr for L <= l_max.
struct SphericalSpectrum {
  std::map<HarmonicIndex, double> entries;
  int l_max = 0;
  double r_max = 0.0;
  /// ∫_{r <= r_max} |δψ|² d³r on the same shell quadrature.
  double ball_norm = 0.0;

  double probability(HarmonicIndex index) const;
  double total() const;
  /// Channels sorted by decreasing probability.
  std::vector<std::pair<HarmonicIndex, double>> ranked() const;

  /// {"l_max", "r_max", "ball_norm", "channels": [{L, M, P}, ...]}.
  std::string to_json() const;
  /// Header "L,M,P" then one row per channel.
  std::string to_csv() const;
};

struct SpectrumOptions {
  int l_max = 8;
  int n_radial = 48;
  double r_max = 20.0;
  int n_theta = 0;  // 0: 2 l_max + 8
  int n_phi = 0;    // 0: 4 l_max + 16
};

/// Tricubic (4-point Lagrange per axis) interpolation of ψ at an arbitrary point.
/// Throws std::out_of_range when the stencil leaves the grid.
Complex interpolate(const Wavefunction& psi, const Vec3& r);

/// Projects δψ onto Y_L^M on Gauss-Legendre radial shells in [0, r_max].
///
/// Each shell is sampled by tricubic interpolation on a Gauss-Legendre (cos θ)
/// × uniform φ mesh; u_{L,M}(r) = ∫ Y_L^{M*} δψ dΩ by a φ-DFT followed by a
/// Legendre sum. Throws std::invalid_argument when the angular mesh cannot
/// resolve l_max or r_max reaches the grid edge.
SphericalSpectrum spherical_spectrum(const Wavefunction& delta_psi, const SpectrumOptions& options);

SphericalSpectrum spherical_spectrum(const Wavefunction& delta_psi, int l_max, int n_radial, double r_max);

}  // namespace oamion::analysis
