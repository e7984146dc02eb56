#include "oamion/beam/vector_potential.hpp"

#include <cmath>
#include <stdexcept>

namespace oamion::beam {
namespace {

bool inside_window(double t, double z, const PulseConfig& cfg) {
  return t > cfg.window_start(z) && t < cfg.window_end(z);
}

int vortex_sign(int ell) { return ell < 0 ? -1 : 1; }

FieldSample combine(const Polarization& pol, Complex t_factor, Complex t_rate, Complex profile) {
  const Polarization e = pol.normalized();
  const Complex a = t_factor * profile;
  const Complex da = t_rate * profile;
  FieldSample out;
  out.A = {2.0 * (e.alpha * a).real(), 2.0 * (e.beta * a).real(), 0.0};
  out.E = {-2.0 * (e.alpha * da).real(), -2.0 * (e.beta * da).real(), 0.0};
  return out;
}

}  // namespace

Complex temporal_factor(double t, double z, const PulseConfig& cfg) {
  if (!inside_window(t, z, cfg)) return {};
  const double s = std::sin(cfg.envelope_frequency() * (cfg.window_start(z) - t));
  return s * s * std::polar(1.0, cfg.wavenumber() * z - cfg.omega * t + cfg.chi);
}

Complex temporal_factor_rate(double t, double z, const PulseConfig& cfg) {
  if (!inside_window(t, z, cfg)) return {};
  const double we = cfg.envelope_frequency();
  const double arg = we * (cfg.window_start(z) - t);
  const double s = std::sin(arg);
  const Complex carrier = std::polar(1.0, cfg.wavenumber() * z - cfg.omega * t + cfg.chi);
  return carrier * Complex{-we * std::sin(2.0 * arg), -cfg.omega * s * s};
}

Complex full_profile(double x, double y, double z, const PulseConfig& cfg) {
  return cfg.amplitude * cfg.waist *
         lg_mode(std::hypot(x, y), std::atan2(y, x), z, cfg.wavenumber(), cfg);
}

double near_origin_coefficient(const PulseConfig& cfg) {
  const int n = std::abs(cfg.ell);
  const double w0 = cfg.waist;
  const double laguerre = std::assoc_laguerre(static_cast<unsigned>(cfg.p), static_cast<unsigned>(n), 0.0);
  return cfg.amplitude * w0 * (lg_constant(cfg) / w0) * std::pow(std::sqrt(2.0) / w0, n) * laguerre;
}

Complex near_origin_profile(double x, double y, const PulseConfig& cfg) {
  const int n = std::abs(cfg.ell);
  const Complex zeta{x, vortex_sign(cfg.ell) * y};
  return near_origin_coefficient(cfg) * std::pow(zeta, n);
}

Complex near_origin_profile_integral_x(double x, double y, const PulseConfig& cfg) {
  const int n = std::abs(cfg.ell);
  const Complex zeta{x, vortex_sign(cfg.ell) * y};
  return near_origin_coefficient(cfg) * std::pow(zeta, n + 1) / static_cast<double>(n + 1);
}

Complex near_origin_profile_integral_y(double x, double y, const PulseConfig& cfg) {
  const int n = std::abs(cfg.ell);
  const Complex zeta{x, vortex_sign(cfg.ell) * y};
  return near_origin_coefficient(cfg) * std::pow(zeta, n + 1) /
         (Complex{0.0, static_cast<double>(vortex_sign(cfg.ell))} * static_cast<double>(n + 1));
}

FieldSample vector_potential(const Vec3& r, double t, const PulseConfig& cfg) {
  const Vec3 b = beam_frame(r, cfg);
  if (!inside_window(t, b.z, cfg)) return {};
  return combine(cfg.pol, temporal_factor(t, b.z, cfg), temporal_factor_rate(t, b.z, cfg),
                 full_profile(b.x, b.y, b.z, cfg));
}

FieldSample near_origin_potential(const Vec3& r, double t, const PulseConfig& cfg) {
  const Vec3 b = beam_frame(r, cfg);
  return combine(cfg.pol, temporal_factor(t, 0.0, cfg), temporal_factor_rate(t, 0.0, cfg),
                 near_origin_profile(b.x, b.y, cfg));
}

FieldSample field(const Vec3& r, double t, const PulseConfig& cfg) {
  return cfg.model == BeamModel::Full ? vector_potential(r, t, cfg) : near_origin_potential(r, t, cfg);
}

std::vector<CepSample> cep_map(const PulseConfig& cfg, double radius, int n_samples) {
  if (!(radius > 0.0)) throw std::invalid_argument("cep_map radius must be positive");
  if (n_samples < 2) throw std::invalid_argument("cep_map needs at least two samples");
  const Polarization e = cfg.pol.normalized();
  const Complex weight = std::abs(e.alpha) >= std::abs(e.beta) ? e.alpha : e.beta;
  const double t_peak = cfg.envelope_peak(0.0);
  std::vector<CepSample> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  double previous = 0.0;
  for (int j = 0; j < n_samples; ++j) {
    const double phi = 2.0 * kPi * j / n_samples;
    const Vec3 b{radius * std::cos(phi), radius * std::sin(phi), 0.0};
    const Complex profile = cfg.model == BeamModel::Full ? full_profile(b.x, b.y, 0.0, cfg)
                                                         : near_origin_profile(b.x, b.y, cfg);
    const Complex a = weight * profile * std::polar(1.0, cfg.chi - cfg.omega * t_peak);
    double cep = std::arg(a);
    if (j > 0) cep = previous + std::remainder(cep - previous, 2.0 * kPi);
    out.push_back({phi, cep});
    previous = cep;
  }
  return out;
}

double ponderomotive_energy(const Vec3& r, const PulseConfig& cfg, double charge) {
  const Vec3 b = beam_frame(r, cfg);
  const Complex profile =
      cfg.model == BeamModel::Full ? full_profile(b.x, b.y, b.z, cfg) : near_origin_profile(b.x, b.y, cfg);
  // A = 2Re[ê T U]; over one carrier cycle at unit envelope <A²> = 2|U|² |ê|².
  return charge * charge * std::norm(profile);
}

}  // namespace oamion::beam
