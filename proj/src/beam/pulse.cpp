#include "oamion/beam/pulse.hpp"

#include <cmath>
#include <stdexcept>

#include "oamion/beam/vector_potential.hpp"

namespace oamion::beam {

std::string to_string(BeamModel model) { return model == BeamModel::Full ? "full" : "near-origin"; }

BeamModel parse_beam_model(const std::string& name) {
  if (name == "full") return BeamModel::Full;
  if (name == "near-origin") return BeamModel::NearOrigin;
  throw std::invalid_argument("unknown beam model '" + name + "' (expected full or near-origin)");
}

std::string to_string(LgNormalization norm) { return norm == LgNormalization::Allen ? "allen" : "unit"; }

LgNormalization parse_lg_normalization(const std::string& name) {
  if (name == "allen") return LgNormalization::Allen;
  if (name == "unit") return LgNormalization::Unit;
  throw std::invalid_argument("unknown LG normalization '" + name + "' (expected allen or unit)");
}

void PulseConfig::validate() const {
  if (!(omega > 0.0)) throw std::invalid_argument("pulse omega must be positive");
  if (n_cyc < 1) throw std::invalid_argument("pulse n_cyc must be at least 1");
  if (!(waist > 0.0)) throw std::invalid_argument("pulse waist must be positive");
  if (p < 0) throw std::invalid_argument("pulse radial index p must be non-negative");
  if (pol.norm() == 0.0) throw std::invalid_argument("pulse polarization has zero norm");
  if (!std::isfinite(amplitude)) throw std::invalid_argument("pulse amplitude must be finite");
}

double lg_constant(const PulseConfig& cfg) {
  if (cfg.normalization == LgNormalization::Unit) return cfg.waist;
  const int n = std::abs(cfg.ell);
  const double log_ratio = std::lgamma(cfg.p + 1.0) - std::lgamma(cfg.p + n + 1.0);
  return std::sqrt(2.0 / kPi * std::exp(log_ratio));
}

Complex lg_mode(double rho, double phi, double z, double k, const PulseConfig& cfg) {
  const int n = std::abs(cfg.ell);
  const double w0 = cfg.waist;
  const double zr = 0.5 * k * w0 * w0;
  const double w = w0 * std::sqrt(1.0 + (z / zr) * (z / zr));
  const double s = std::sqrt(2.0) * rho / w;
  const double u = 2.0 * rho * rho / (w * w);
  const double amplitude = lg_constant(cfg) / w * std::pow(s, n) *
                           std::assoc_laguerre(static_cast<unsigned>(cfg.p), static_cast<unsigned>(n), u) *
                           std::exp(-rho * rho / (w * w));
  const double curvature = z == 0.0 ? 0.0 : k * rho * rho * z / (2.0 * (z * z + zr * zr));
  const double gouy = (2.0 * cfg.p + n + 1.0) * std::atan(z / zr);
  return amplitude * std::polar(1.0, curvature - gouy + cfg.ell * phi);
}

double polarization_peak(const Polarization& pol) {
  const Polarization e = pol.normalized();
  const double sum = std::norm(e.alpha) + std::norm(e.beta);
  return std::sqrt(0.5 * (sum + std::abs(e.alpha * e.alpha + e.beta * e.beta)));
}

double amplitude_for_peak_field(const PulseConfig& cfg, double target_field, double rho_ref) {
  if (!(rho_ref > 0.0)) throw std::invalid_argument("reference radius must be positive");
  PulseConfig unit = cfg;
  unit.amplitude = 1.0;
  unit.atom_displacement = {};
  const double profile = cfg.model == BeamModel::Full ? std::abs(full_profile(rho_ref, 0.0, 0.0, unit))
                                                      : std::abs(near_origin_profile(rho_ref, 0.0, unit));
  const double peak = cfg.omega * 2.0 * profile * polarization_peak(cfg.pol);
  if (peak == 0.0) throw std::invalid_argument("field vanishes at the reference radius");
  return target_field / peak;
}

}  // namespace oamion::beam
