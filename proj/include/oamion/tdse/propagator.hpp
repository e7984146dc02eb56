#pragma once

#include <memory>
#include <string>
#include <vector>

#include "oamion/beam/pulse.hpp"
#include "oamion/tdse/field_tables.hpp"
#include "oamion/tdse/grid.hpp"
#include "oamion/tdse/spectral.hpp"

namespace oamion::tdse {

enum class Gauge { Velocity };

enum class AbsorberType { CosMask, None };

std::string to_string(AbsorberType type);
AbsorberType parse_absorber_type(const std::string& name);

/// Boundary mask: each step multiplies ψ by Π_axes cos(π s/2)^{strength·|dt|},
/// s ∈ [0, 1] the depth into a layer of the given width at both ends of every axis.
struct AbsorberConfig {
  AbsorberType type = AbsorberType::CosMask;
  double width = 6.0;
  double strength = 25.0;

  friend bool operator==(const AbsorberConfig&, const AbsorberConfig&) = default;
};

struct PropagatorConfig {
  double dt = 0.005;
  Gauge gauge = Gauge::Velocity;
  double soft_core = 0.05;
  double nuclear_charge = 1.0;  // Z in V = −Z/√(r² + a²); 0 gives a free particle
  AbsorberConfig absorber{};
  double charge = -1.0;

  /// Throws std::invalid_argument on dt == 0, soft_core < 0, or an absorber wider than half the box.
  void validate(const GridSpec& grid) const;

  friend bool operator==(const PropagatorConfig&, const PropagatorConfig&) = default;
};

/// −Z/√(r² + a²) on the grid nodes.
std::vector<double> soft_core_potential(const GridSpec& grid, double a, double nuclear_charge = 1.0);

/// Per-node base factor cos(π s/2) of the absorber along one axis (1 outside the layer).
std::vector<double> absorber_profile(const GridSpec& grid, const AbsorberConfig& absorber, int axis);

/// Split-operator propagator for (p − qA)²/2 + V in velocity gauge.
///
/// One step from t to t + dt, with the field frozen at t + dt/2:
///   V/2 · K_x(dt/2) · K_y(dt/2) · K_z(dt) · K_y(dt/2) · K_x(dt/2) · V/2 · mask.
/// Each K_j = exp(−iΔ(p_j − qA_j)²/2) is applied exactly as
/// e^{iqΛ_j} exp(−iΔp_j²/2) e^{−iqΛ_j} with ∂_jΛ_j = A_j, so the p·A + A·p
/// and A² parts both enter without further approximation. A_z = 0, so K_z is free.
class Propagator {
 public:
  Propagator(const GridSpec& grid, const PropagatorConfig& config, const beam::PulseConfig& pulse);

  const GridSpec& grid() const { return grid_; }
  const PropagatorConfig& config() const { return config_; }
  const beam::PulseConfig& pulse() const { return fields_.pulse(); }
  const AxisTransforms& transforms() const { return transforms_; }
  const FieldTables& fields() const { return fields_; }
  const std::vector<double>& potential() const { return potential_; }

  /// Advances ψ from t to t + config.dt. Returns the probability removed by the absorber.
  double step(Wavefunction& psi, double t);
  /// Same with an explicit (possibly negative) dt.
  double step(Wavefunction& psi, double t, double dt);

  /// out = (−½∇² + V) ψ, field off.
  void apply_hamiltonian(const Wavefunction& in, Wavefunction& out) const;
  /// ⟨ψ|H₀|ψ⟩ / ⟨ψ|ψ⟩.
  double energy(const Wavefunction& psi) const;

 private:
  void prepare(double dt);
  void kinetic_axis(std::vector<Complex>& data, int axis, double t_mid);

  GridSpec grid_;
  PropagatorConfig config_;
  AxisTransforms transforms_;
  FieldTables fields_;
  std::vector<double> potential_;
  std::array<std::vector<double>, 3> absorber_;

  double prepared_dt_ = 0.0;
  std::vector<Complex> potential_half_;
  std::array<std::vector<Complex>, 3> kinetic_half_;
  std::vector<Complex> kinetic_full_z_;
};

/// One step of a freshly built propagator; convenient for tests, slow in loops.
Wavefunction step(const Wavefunction& psi, double t, const PropagatorConfig& config, const beam::PulseConfig& pulse);

}  // namespace oamion::tdse
