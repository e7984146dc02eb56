#include "oamion/analysis/observables.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace oamion::analysis {
namespace {

struct Moments {
  double lx = 0.0, ly = 0.0, lz = 0.0;
  double norm = 0.0;
};

/// Canonical r × p sums plus the −q r × A correction when fields are given.
Moments angular_moments(const Wavefunction& psi, const tdse::AxisTransforms& transforms,
                        const tdse::FieldTables* fields, double t, double charge) {
  const tdse::GridSpec& g = psi.grid();
  std::vector<Complex> dx;
  std::vector<Complex> dy;
  std::vector<Complex> dz;
  transforms.derivative(psi.data(), dx, 0);
  transforms.derivative(psi.data(), dy, 1);
  transforms.derivative(psi.data(), dz, 2);
  const bool field_on = fields != nullptr && !fields->field_off(t);
  Moments m;
  double lx = 0.0, ly = 0.0, lz = 0.0, nrm = 0.0;
#pragma omp parallel for reduction(+ : lx, ly, lz, nrm) schedule(static)
  for (int k = 0; k < g.n[2]; ++k) {
    const double z = g.coordinate(2, k);
    const Complex tk = field_on ? fields->temporal(t, k) : Complex{};
    for (int j = 0; j < g.n[1]; ++j) {
      const double y = g.coordinate(1, j);
      for (int i = 0; i < g.n[0]; ++i) {
        const double x = g.coordinate(0, i);
        const std::size_t idx = g.index(i, j, k);
        const Complex c = std::conj(psi[idx]);
        // p ψ = −i ∇ψ
        const Complex px = Complex{0.0, -1.0} * dx[idx];
        const Complex py = Complex{0.0, -1.0} * dy[idx];
        const Complex pz = Complex{0.0, -1.0} * dz[idx];
        const double rho = std::norm(psi[idx]);
        lx += (c * (y * pz - z * py)).real();
        ly += (c * (z * px - x * pz)).real();
        lz += (c * (x * py - y * px)).real();
        nrm += rho;
        if (field_on && tk != Complex{}) {
          const Complex a = tk * fields->profile()[fields->table_index(i, j, k)];
          const double ax = 2.0 * (fields->alpha() * a).real();
          const double ay = 2.0 * (fields->beta() * a).real();
          lx += charge * rho * z * ay;
          ly -= charge * rho * z * ax;
          lz -= charge * rho * (x * ay - y * ax);
        }
      }
    }
  }
  m.lx = lx;
  m.ly = ly;
  m.lz = lz;
  m.norm = nrm;
  return m;
}

Vec3 normalized(const Moments& m) {
  if (!(m.norm > 0.0)) throw std::domain_error("angular momentum of a zero state");
  return {m.lx / m.norm, m.ly / m.norm, m.lz / m.norm};
}

}  // namespace

Vec3 kinetic_oam(const Wavefunction& psi, const tdse::AxisTransforms& transforms, const tdse::FieldTables& fields,
                 double t, double charge) {
  return normalized(angular_moments(psi, transforms, &fields, t, charge));
}

Vec3 kinetic_oam(const Wavefunction& psi, const beam::PulseConfig& pulse, double t, double charge) {
  const tdse::AxisTransforms transforms(psi.grid());
  const tdse::FieldTables fields(psi.grid(), pulse, false);
  return kinetic_oam(psi, transforms, fields, t, charge);
}

Vec3 canonical_oam(const Wavefunction& psi, const tdse::AxisTransforms& transforms) {
  return normalized(angular_moments(psi, transforms, nullptr, 0.0, 0.0));
}

Vec3 position_expectation(const Wavefunction& delta_psi) {
  const tdse::GridSpec& g = delta_psi.grid();
  double sx = 0.0, sy = 0.0, sz = 0.0, s = 0.0;
#pragma omp parallel for reduction(+ : sx, sy, sz, s) schedule(static)
  for (int k = 0; k < g.n[2]; ++k) {
    for (int j = 0; j < g.n[1]; ++j) {
      for (int i = 0; i < g.n[0]; ++i) {
        const double w = std::norm(delta_psi.at(i, j, k));
        sx += w * g.coordinate(0, i);
        sy += w * g.coordinate(1, j);
        sz += w * g.coordinate(2, k);
        s += w;
      }
    }
  }
  if (!(s > 0.0)) throw std::domain_error("position expectation of a zero-norm state");
  return {sx / s, sy / s, sz / s};
}

double mean_radius(const Wavefunction& delta_psi) {
  const tdse::GridSpec& g = delta_psi.grid();
  double sr = 0.0, s = 0.0;
#pragma omp parallel for reduction(+ : sr, s) schedule(static)
  for (int k = 0; k < g.n[2]; ++k) {
    for (int j = 0; j < g.n[1]; ++j) {
      for (int i = 0; i < g.n[0]; ++i) {
        const double w = std::norm(delta_psi.at(i, j, k));
        sr += w * g.position(i, j, k).norm();
        s += w;
      }
    }
  }
  if (!(s > 0.0)) throw std::domain_error("mean radius of a zero-norm state");
  return sr / s;
}

double Projection2D::integral() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * h * h;
}

std::string Projection2D::to_csv() const {
  std::ostringstream os;
  os.precision(10);
  os << "# nx=" << nx << " ny=" << ny << " x0=" << x0 << " y0=" << y0 << " h=" << h << '\n';
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) os << (i ? "," : "") << at(i, j);
    os << '\n';
  }
  return os.str();
}

Projection2D xy_projection(const Wavefunction& delta_psi) {
  const tdse::GridSpec& g = delta_psi.grid();
  Projection2D out;
  out.nx = g.n[0];
  out.ny = g.n[1];
  out.x0 = g.origin(0);
  out.y0 = g.origin(1);
  out.h = g.h;
  out.values.assign(static_cast<std::size_t>(out.nx) * static_cast<std::size_t>(out.ny), 0.0);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < g.n[1]; ++j) {
    for (int i = 0; i < g.n[0]; ++i) {
      double sum = 0.0;
      for (int k = 0; k < g.n[2]; ++k) sum += std::norm(delta_psi.at(i, j, k));
      out.values[static_cast<std::size_t>(j) * static_cast<std::size_t>(out.nx) + static_cast<std::size_t>(i)] =
          sum * g.h;
    }
  }
  return out;
}

double RadialHistogram::total() const {
  double sum = beyond;
  for (double b : bins) sum += b;
  return sum;
}

double RadialHistogram::fraction_within(double radius) const {
  const double t = total();
  if (!(t > 0.0)) return 0.0;
  double inside = 0.0;
  for (std::size_t b = 0; b < bins.size(); ++b) {
    if ((static_cast<double>(b) + 1.0) * width <= radius + 1e-12) inside += bins[b];
  }
  return inside / t;
}

std::string RadialHistogram::to_csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "r_low,r_high,weight\n";
  for (std::size_t b = 0; b < bins.size(); ++b) {
    os << static_cast<double>(b) * width << ',' << (static_cast<double>(b) + 1.0) * width << ',' << bins[b] << '\n';
  }
  os << static_cast<double>(bins.size()) * width << ",inf," << beyond << '\n';
  return os.str();
}

RadialHistogram radial_histogram(const Wavefunction& psi, double width, double r_max) {
  if (!(width > 0.0) || !(r_max > 0.0)) throw std::invalid_argument("histogram width and range must be positive");
  RadialHistogram out;
  out.width = width;
  const std::size_t n_bins = static_cast<std::size_t>(std::ceil(r_max / width));
  out.bins.assign(n_bins, 0.0);
  const tdse::GridSpec& g = psi.grid();
  const double dv = g.cell_volume();
  for (int k = 0; k < g.n[2]; ++k) {
    for (int j = 0; j < g.n[1]; ++j) {
      for (int i = 0; i < g.n[0]; ++i) {
        const double w = std::norm(psi.at(i, j, k)) * dv;
        const std::size_t b = static_cast<std::size_t>(g.position(i, j, k).norm() / width);
        if (b < n_bins) {
          out.bins[b] += w;
        } else {
          out.beyond += w;
        }
      }
    }
  }
  return out;
}

double fraction_within(const Wavefunction& psi, double radius) {
  const tdse::GridSpec& g = psi.grid();
  double inside = 0.0, total = 0.0;
#pragma omp parallel for reduction(+ : inside, total) schedule(static)
  for (int k = 0; k < g.n[2]; ++k) {
    for (int j = 0; j < g.n[1]; ++j) {
      for (int i = 0; i < g.n[0]; ++i) {
        const double w = std::norm(psi.at(i, j, k));
        total += w;
        if (g.position(i, j, k).norm() < radius) inside += w;
      }
    }
  }
  return total > 0.0 ? inside / total : 0.0;
}

}  // namespace oamion::analysis
