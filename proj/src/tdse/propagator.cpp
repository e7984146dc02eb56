#include "oamion/tdse/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace oamion::tdse {

std::string to_string(AbsorberType type) { return type == AbsorberType::CosMask ? "cos-mask" : "none"; }

AbsorberType parse_absorber_type(const std::string& name) {
  if (name == "cos-mask") return AbsorberType::CosMask;
  if (name == "none") return AbsorberType::None;
  throw std::invalid_argument("unknown absorber type '" + name + "' (expected cos-mask or none)");
}

void PropagatorConfig::validate(const GridSpec& grid) const {
  grid.validate();
  if (dt == 0.0 || !std::isfinite(dt)) throw std::invalid_argument("time step must be finite and nonzero");
  if (soft_core < 0.0) throw std::invalid_argument("soft-core radius must be non-negative");
  if (nuclear_charge < 0.0) throw std::invalid_argument("nuclear charge must be non-negative");
  if (absorber.type == AbsorberType::CosMask) {
    if (!(absorber.width > 0.0)) throw std::invalid_argument("absorber width must be positive");
    if (absorber.strength < 0.0) throw std::invalid_argument("absorber strength must be non-negative");
    for (int a = 0; a < 3; ++a) {
      if (absorber.width >= grid.half_extent(a)) {
        throw std::invalid_argument("absorber width must be smaller than half the box");
      }
    }
  }
}

std::vector<double> soft_core_potential(const GridSpec& grid, double a, double nuclear_charge) {
  std::vector<double> v(grid.size());
  const double a2 = a * a;
#pragma omp parallel for schedule(static)
  for (int k = 0; k < grid.n[2]; ++k) {
    const double z = grid.coordinate(2, k);
    for (int j = 0; j < grid.n[1]; ++j) {
      const double y = grid.coordinate(1, j);
      for (int i = 0; i < grid.n[0]; ++i) {
        const double x = grid.coordinate(0, i);
        v[grid.index(i, j, k)] = -nuclear_charge / std::sqrt(x * x + y * y + z * z + a2);
      }
    }
  }
  return v;
}

std::vector<double> absorber_profile(const GridSpec& grid, const AbsorberConfig& absorber, int axis) {
  const int n = grid.n[static_cast<std::size_t>(axis)];
  std::vector<double> out(static_cast<std::size_t>(n), 1.0);
  if (absorber.type == AbsorberType::None) return out;
  const double center = grid.origin(axis) + 0.5 * (n - 1) * grid.h;
  const double inner = grid.half_extent(axis) - absorber.width;
  for (int i = 0; i < n; ++i) {
    const double depth = std::abs(grid.coordinate(axis, i) - center) - inner;
    if (depth > 0.0) out[static_cast<std::size_t>(i)] = std::cos(0.5 * kPi * std::min(depth / absorber.width, 1.0));
  }
  return out;
}

Propagator::Propagator(const GridSpec& grid, const PropagatorConfig& config, const beam::PulseConfig& pulse)
    : grid_(grid), config_(config), transforms_(grid), fields_(grid, pulse, true) {
  config_.validate(grid_);
  potential_ = soft_core_potential(grid_, config_.soft_core, config_.nuclear_charge);
  for (int a = 0; a < 3; ++a) absorber_[static_cast<std::size_t>(a)] = absorber_profile(grid_, config_.absorber, a);
  prepare(config_.dt);
}

void Propagator::prepare(double dt) {
  if (dt == prepared_dt_ && !potential_half_.empty()) return;
  prepared_dt_ = dt;
  potential_half_.resize(potential_.size());
  const std::size_t n = potential_.size();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) potential_half_[i] = std::polar(1.0, -0.5 * dt * potential_[i]);
  for (int a = 0; a < 3; ++a) {
    kinetic_half_[static_cast<std::size_t>(a)] = kinetic_phase(transforms_.wavenumbers(a), 0.5 * dt);
  }
  kinetic_full_z_ = kinetic_phase(transforms_.wavenumbers(2), dt);
}

void Propagator::kinetic_axis(std::vector<Complex>& data, int axis, double t_mid) {
  if (axis == 2) {
    transforms_.apply(data, 2, kinetic_full_z_);
    return;
  }
  const auto& spectral = kinetic_half_[static_cast<std::size_t>(axis)];
  if (fields_.field_off(t_mid)) {
    transforms_.apply(data, axis, spectral);
    return;
  }
  const double q = config_.charge;
  const Complex weight = axis == 0 ? fields_.alpha() : fields_.beta();
  if (weight == Complex{}) {
    transforms_.apply(data, axis, spectral);
    return;
  }
  const auto& integral = axis == 0 ? fields_.integral_x() : fields_.integral_y();
  const std::size_t plane = static_cast<std::size_t>(grid_.n[0]) * static_cast<std::size_t>(grid_.n[1]);

  if (fields_.planar()) {
    const Complex c = weight * fields_.temporal(t_mid, 0);
    std::vector<Complex> gauge(plane);
    for (std::size_t p = 0; p < plane; ++p) gauge[p] = std::polar(1.0, -q * 2.0 * (c * integral[p]).real());
    auto pre = [&gauge, plane](Complex* slab, int) {
      for (std::size_t p = 0; p < plane; ++p) slab[p] *= gauge[p];
    };
    auto post = [&gauge, plane](Complex* slab, int) {
      for (std::size_t p = 0; p < plane; ++p) slab[p] *= std::conj(gauge[p]);
    };
    transforms_.apply(data, axis, spectral, pre, post);
    return;
  }

  auto apply_gauge = [&, q, plane](Complex* slab, int k, double sign) {
    const Complex c = weight * fields_.temporal(t_mid, k);
    if (c == Complex{}) return;
    const Complex* w = integral.data() + static_cast<std::size_t>(k) * plane;
    for (std::size_t p = 0; p < plane; ++p) slab[p] *= std::polar(1.0, sign * q * 2.0 * (c * w[p]).real());
  };
  transforms_.apply(
      data, axis, spectral, [&](Complex* slab, int k) { apply_gauge(slab, k, -1.0); },
      [&](Complex* slab, int k) { apply_gauge(slab, k, 1.0); });
}

double Propagator::step(Wavefunction& psi, double t) { return step(psi, t, config_.dt); }

double Propagator::step(Wavefunction& psi, double t, double dt) {
  if (!(psi.grid() == grid_)) throw std::invalid_argument("wavefunction grid does not match the propagator");
  prepare(dt);
  const double t_mid = t + 0.5 * dt;
  auto& d = psi.data();
  const std::size_t n = d.size();

#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) d[i] *= potential_half_[i];

  kinetic_axis(d, 0, t_mid);
  kinetic_axis(d, 1, t_mid);
  kinetic_axis(d, 2, t_mid);
  kinetic_axis(d, 1, t_mid);
  kinetic_axis(d, 0, t_mid);

  if (config_.absorber.type == AbsorberType::None) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) d[i] *= potential_half_[i];
    return 0.0;
  }

  const double exponent = config_.absorber.strength * std::abs(dt);
  std::array<std::vector<double>, 3> mask;
  for (std::size_t a = 0; a < 3; ++a) {
    mask[a].resize(absorber_[a].size());
    for (std::size_t i = 0; i < mask[a].size(); ++i) mask[a][i] = std::pow(absorber_[a][i], exponent);
  }
  const int nx = grid_.n[0];
  const int ny = grid_.n[1];
  const int nz = grid_.n[2];
  double before = 0.0;
  double after = 0.0;
#pragma omp parallel for reduction(+ : before, after) schedule(static)
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < ny; ++j) {
      const double myz = mask[1][static_cast<std::size_t>(j)] * mask[2][static_cast<std::size_t>(k)];
      const std::size_t row = grid_.index(0, j, k);
      for (int i = 0; i < nx; ++i) {
        Complex& v = d[row + static_cast<std::size_t>(i)];
        v *= potential_half_[row + static_cast<std::size_t>(i)];
        const double m = myz * mask[0][static_cast<std::size_t>(i)];
        if (m != 1.0) {
          before += std::norm(v);
          v *= m;
          after += std::norm(v);
        }
      }
    }
  }
  return (before - after) * grid_.cell_volume();
}

void Propagator::apply_hamiltonian(const Wavefunction& in, Wavefunction& out) const {
  if (!(in.grid() == grid_)) throw std::invalid_argument("wavefunction grid does not match the propagator");
  if (!(out.grid() == grid_)) out = Wavefunction(grid_);
  transforms_.kinetic(in.data(), out.data());
  const std::size_t n = potential_.size();
  auto& o = out.data();
  const auto& a = in.data();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) o[i] += potential_[i] * a[i];
}

double Propagator::energy(const Wavefunction& psi) const {
  const double kinetic = transforms_.kinetic_energy(psi);
  double pot = 0.0;
  const auto& d = psi.data();
  const std::size_t n = d.size();
#pragma omp parallel for reduction(+ : pot) schedule(static)
  for (std::size_t i = 0; i < n; ++i) pot += potential_[i] * std::norm(d[i]);
  return (kinetic + pot * grid_.cell_volume()) / psi.norm_squared();
}

Wavefunction step(const Wavefunction& psi, double t, const PropagatorConfig& config, const beam::PulseConfig& pulse) {
  Propagator prop(psi.grid(), config, pulse);
  Wavefunction out = psi;
  prop.step(out, t);
  return out;
}

}  // namespace oamion::tdse
