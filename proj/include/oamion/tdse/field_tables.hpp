#pragma once

#include <vector>

#include "oamion/beam/vector_potential.hpp"
#include "oamion/tdse/grid.hpp"

namespace oamion::tdse {

/// The beam sampled on a grid in factored form A = 2Re[ê T(t, z) U(x, y, z)].
///
/// For the near-origin model U does not depend on z and the tables are single
/// xy planes; the full model stores whole volumes. The optional antiderivatives
/// ∫U dx and ∫U dy feed the gauge-transformed kinetic sub-steps.
class FieldTables {
 public:
  FieldTables(const GridSpec& grid, const beam::PulseConfig& pulse, bool with_integrals);

  const GridSpec& grid() const { return grid_; }
  const beam::PulseConfig& pulse() const { return pulse_; }
  bool planar() const { return planar_; }
  bool has_integrals() const { return !integral_x_.empty(); }

  /// T(t, z_k) including the window; zero outside the pulse.
  Complex temporal(double t, int k) const;
  /// True when T vanishes on every plane at time t.
  bool field_off(double t) const;

  std::size_t table_index(int i, int j, int k) const {
    return planar_ ? static_cast<std::size_t>(j) * static_cast<std::size_t>(grid_.n[0]) + static_cast<std::size_t>(i)
                   : grid_.index(i, j, k);
  }
  const std::vector<Complex>& profile() const { return profile_; }
  const std::vector<Complex>& integral_x() const { return integral_x_; }
  const std::vector<Complex>& integral_y() const { return integral_y_; }

  /// Normalized polarization components.
  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }

  /// A at node (i, j, k) and time t.
  Vec3 potential(int i, int j, int k, double t) const;

 private:
  GridSpec grid_;
  beam::PulseConfig pulse_;
  bool planar_ = true;
  Complex alpha_;
  Complex beta_;
  std::vector<double> beam_z_;
  std::vector<Complex> profile_;
  std::vector<Complex> integral_x_;
  std::vector<Complex> integral_y_;
};

}  // namespace oamion::tdse
