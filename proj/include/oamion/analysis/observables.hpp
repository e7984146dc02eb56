#pragma once

#include <string>
#include <vector>

#include "oamion/beam/pulse.hpp"
#include "oamion/tdse/field_tables.hpp"
#include "oamion/tdse/grid.hpp"
#include "oamion/tdse/spectral.hpp"

namespace oamion::analysis {

using tdse::Wavefunction;

/// ⟨r × (p − qA)⟩ / ⟨ψ|ψ⟩ with p by spectral differentiation and A from the tables at time t.
Vec3 kinetic_oam(const Wavefunction& psi, const tdse::AxisTransforms& transforms, const tdse::FieldTables& fields,
                 double t, double charge = -1.0);

/// Convenience form that builds transforms and field tables for the state's grid.
Vec3 kinetic_oam(const Wavefunction& psi, const beam::PulseConfig& pulse, double t, double charge = -1.0);

/// Canonical ⟨r × p⟩ / ⟨ψ|ψ⟩.
Vec3 canonical_oam(const Wavefunction& psi, const tdse::AxisTransforms& transforms);

/// ⟨r⟩ of the normalized state; throws std::domain_error on zero norm.
Vec3 position_expectation(const Wavefunction& delta_psi);

/// ⟨|r|⟩ of the normalized state; throws std::domain_error on zero norm.
double mean_radius(const Wavefunction& delta_psi);

/// ∫ |δψ|² dz on the xy nodes.
struct Projection2D {
  int nx = 0;
  int ny = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double h = 0.0;
  std::vector<double> values;  // row-major in y, x fastest

  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i)]; }
  /// ∫∫ values dx dy.
  double integral() const;
  /// "# nx=.. ny=.. x0=.. y0=.. h=.." metadata line, then ny rows of nx comma-separated values.
  std::string to_csv() const;
};

Projection2D xy_projection(const Wavefunction& delta_psi);

/// Probability per radial shell [r_b, r_b + width) up to r_max, plus the weight beyond.
struct RadialHistogram {
  double width = 0.0;
  std::vector<double> bins;
  double beyond = 0.0;

  double total() const;
  /// Weight with r < radius divided by the total.
  double fraction_within(double radius) const;
  std::string to_csv() const;
};

RadialHistogram radial_histogram(const Wavefunction& psi, double width, double r_max);

/// Weight of ψ inside |r| < radius over its total weight (exact node sum).
double fraction_within(const Wavefunction& psi, double radius);

}  // namespace oamion::analysis
