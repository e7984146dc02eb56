#include "oamion/tdse/field_tables.hpp"

#include <array>

namespace oamion::tdse {
namespace {

// 4-point Gauss-Legendre on [0, 1].
constexpr std::array<double, 4> kGlNodes{0.0694318442029737, 0.3300094782075719, 0.6699905217924281,
                                         0.9305681557970263};
constexpr std::array<double, 4> kGlWeights{0.1739274225687269, 0.3260725774312731, 0.3260725774312731,
                                           0.1739274225687269};

}  // namespace

FieldTables::FieldTables(const GridSpec& grid, const beam::PulseConfig& pulse, bool with_integrals)
    : grid_(grid), pulse_(pulse), planar_(pulse.model == beam::BeamModel::NearOrigin) {
  grid_.validate();
  pulse_.validate();
  const auto e = pulse_.pol.normalized();
  alpha_ = e.alpha;
  beta_ = e.beta;
  const Vec3 d = pulse_.atom_displacement;
  const int nx = grid_.n[0];
  const int ny = grid_.n[1];
  const int nz = grid_.n[2];
  beam_z_.resize(static_cast<std::size_t>(nz));
  for (int k = 0; k < nz; ++k) beam_z_[static_cast<std::size_t>(k)] = planar_ ? 0.0 : grid_.coordinate(2, k) + d.z;

  const int planes = planar_ ? 1 : nz;
  const std::size_t plane_size = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  profile_.assign(plane_size * static_cast<std::size_t>(planes), Complex{});
  if (with_integrals) {
    integral_x_.assign(profile_.size(), Complex{});
    integral_y_.assign(profile_.size(), Complex{});
  }
  const double h = grid_.h;

#pragma omp parallel for schedule(static)
  for (int k = 0; k < planes; ++k) {
    const double z = beam_z_[static_cast<std::size_t>(k)];
    for (int j = 0; j < ny; ++j) {
      const double y = grid_.coordinate(1, j) + d.y;
      for (int i = 0; i < nx; ++i) {
        const double x = grid_.coordinate(0, i) + d.x;
        const std::size_t idx = static_cast<std::size_t>(k) * plane_size + table_index(i, j, 0);
        if (planar_) {
          profile_[idx] = beam::near_origin_profile(x, y, pulse_);
          if (with_integrals) {
            integral_x_[idx] = beam::near_origin_profile_integral_x(x, y, pulse_);
            integral_y_[idx] = beam::near_origin_profile_integral_y(x, y, pulse_);
          }
        } else {
          profile_[idx] = beam::full_profile(x, y, z, pulse_);
        }
      }
    }
    if (!planar_ && with_integrals) {
      // Cumulative cell integrals along x and y, starting from zero at node 0.
      for (int j = 0; j < ny; ++j) {
        const double y = grid_.coordinate(1, j) + d.y;
        Complex acc{};
        for (int i = 0; i < nx; ++i) {
          const std::size_t idx = static_cast<std::size_t>(k) * plane_size + table_index(i, j, 0);
          integral_x_[idx] = acc;
          const double x0 = grid_.coordinate(0, i) + d.x;
          for (std::size_t q = 0; q < 4; ++q) {
            acc += h * kGlWeights[q] * beam::full_profile(x0 + h * kGlNodes[q], y, z, pulse_);
          }
        }
      }
      for (int i = 0; i < nx; ++i) {
        const double x = grid_.coordinate(0, i) + d.x;
        Complex acc{};
        for (int j = 0; j < ny; ++j) {
          const std::size_t idx = static_cast<std::size_t>(k) * plane_size + table_index(i, j, 0);
          integral_y_[idx] = acc;
          const double y0 = grid_.coordinate(1, j) + d.y;
          for (std::size_t q = 0; q < 4; ++q) {
            acc += h * kGlWeights[q] * beam::full_profile(x, y0 + h * kGlNodes[q], z, pulse_);
          }
        }
      }
    }
  }
}

Complex FieldTables::temporal(double t, int k) const {
  return beam::temporal_factor(t, beam_z_[static_cast<std::size_t>(k)], pulse_);
}

bool FieldTables::field_off(double t) const {
  if (planar_) return temporal(t, 0) == Complex{};
  const double z_lo = beam_z_.front();
  const double z_hi = beam_z_.back();
  return t <= pulse_.window_start(z_lo) || t >= pulse_.window_end(z_hi);
}

Vec3 FieldTables::potential(int i, int j, int k, double t) const {
  const Complex a = temporal(t, k) * profile_[table_index(i, j, k)];
  return {2.0 * (alpha_ * a).real(), 2.0 * (beta_ * a).real(), 0.0};
}

}  // namespace oamion::tdse
