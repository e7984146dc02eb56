#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "oamion/angular/algebra.hpp"
#include "oamion/angular/clebsch_gordan.hpp"
#include "oamion/angular/harmonic.hpp"

namespace oamion::angular {

void require_valid(const HarmonicIndex& index) {
  if (!index.valid()) {
    throw std::invalid_argument("invalid harmonic index (L=" + std::to_string(index.L) +
                                ", M=" + std::to_string(index.M) + ")");
  }
}

Complex spherical_harmonic(int L, int M, double theta, double phi) {
  require_valid({L, M});
  const int am = std::abs(M);
  const double p = std::sph_legendre(static_cast<unsigned>(L), static_cast<unsigned>(am), theta);
  const Complex y = p * std::polar(1.0, am * phi);
  if (M >= 0) return y;
  return (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

// --- HarmonicExpansion -------------------------------------------------------

HarmonicExpansion::HarmonicExpansion(Terms terms) : terms_(std::move(terms)) {
  for (const auto& [index, c] : terms_) require_valid(index);
}

HarmonicExpansion HarmonicExpansion::single(HarmonicIndex index, Complex coefficient) {
  HarmonicExpansion e;
  e.add(index, coefficient);
  return e;
}

void HarmonicExpansion::add(HarmonicIndex index, Complex coefficient) {
  require_valid(index);
  terms_[index] += coefficient;
}

HarmonicExpansion& HarmonicExpansion::prune(double tolerance) {
  std::erase_if(terms_, [tolerance](const auto& kv) { return std::abs(kv.second) < tolerance; });
  return *this;
}

Complex HarmonicExpansion::coefficient(HarmonicIndex index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Complex{} : it->second;
}

int HarmonicExpansion::max_L() const {
  int out = -1;
  for (const auto& [index, c] : terms_) out = std::max(out, index.L);
  return out;
}

Complex HarmonicExpansion::evaluate(double theta, double phi) const {
  Complex sum{};
  for (const auto& [index, c] : terms_) sum += c * spherical_harmonic(index.L, index.M, theta, phi);
  return sum;
}

HarmonicExpansion& HarmonicExpansion::operator*=(Complex s) {
  for (auto& [index, c] : terms_) c *= s;
  return *this;
}

HarmonicExpansion& HarmonicExpansion::operator+=(const HarmonicExpansion& other) {
  for (const auto& [index, c] : other.terms_) terms_[index] += c;
  return *this;
}

std::string HarmonicExpansion::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [index, c] : terms_) {
    out.push_back({{"L", index.L}, {"M", index.M}, {"re", c.real()}, {"im", c.imag()}});
  }
  return out.dump();
}

Complex AngularFactor::evaluate(double theta, double phi) const {
  return std::pow(std::sin(theta), sin_power) * std::polar(1.0, azimuthal * phi);
}

// --- Polarization -------------------------------------------------------------

Polarization Polarization::circular_right() {
  const double s = 1.0 / std::sqrt(2.0);
  return {Complex{s, 0.0}, Complex{0.0, s}};
}

Polarization Polarization::circular_left() {
  const double s = 1.0 / std::sqrt(2.0);
  return {Complex{s, 0.0}, Complex{0.0, -s}};
}

Polarization Polarization::parse(std::string_view name) {
  if (name == "linear-x") return linear_x();
  if (name == "linear-y") return linear_y();
  if (name == "circ-right") return circular_right();
  if (name == "circ-left") return circular_left();
  throw std::invalid_argument("unknown polarization '" + std::string(name) +
                              "' (expected linear-x, linear-y, circ-right or circ-left)");
}

std::string Polarization::name() const {
  const Polarization n = normalized();
  auto close = [](const Polarization& a, const Polarization& b) {
    return std::abs(a.alpha - b.alpha) < 1e-12 && std::abs(a.beta - b.beta) < 1e-12;
  };
  if (close(n, linear_x())) return "linear-x";
  if (close(n, linear_y())) return "linear-y";
  if (close(n, circular_right())) return "circ-right";
  if (close(n, circular_left())) return "circ-left";
  return "custom";
}

Polarization Polarization::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("polarization vector has zero norm");
  return {alpha / n, beta / n};
}

// --- Expansions ---------------------------------------------------------------

HarmonicExpansion product_expansion(HarmonicIndex a, HarmonicIndex b, double drop_tolerance) {
  require_valid(a);
  require_valid(b);
  HarmonicExpansion out;
  const int M = a.M + b.M;
  for (int L = std::abs(a.L - b.L); L <= a.L + b.L; ++L) {
    if (std::abs(M) > L) continue;
    const double parity = clebsch_gordan(a.L, b.L, 0, 0, L, 0);
    if (parity == 0.0) continue;
    const double coupling = clebsch_gordan(a.L, b.L, a.M, b.M, L, M);
    if (coupling == 0.0) continue;
    const double norm = std::sqrt((2.0 * a.L + 1.0) * (2.0 * b.L + 1.0) / (4.0 * kPi * (2.0 * L + 1.0)));
    out.add({L, M}, norm * parity * coupling);
  }
  return out.prune(drop_tolerance);
}

HarmonicExpansion multiply(const HarmonicExpansion& lhs, const HarmonicExpansion& rhs, double drop_tolerance) {
  HarmonicExpansion out;
  for (const auto& [ia, ca] : lhs.terms()) {
    for (const auto& [ib, cb] : rhs.terms()) {
      out += (ca * cb) * product_expansion(ia, ib, 0.0);
    }
  }
  return out.prune(drop_tolerance);
}

HarmonicExpansion sin_squared_expansion() {
  const double scale = 4.0 * std::sqrt(kPi) / 3.0;
  HarmonicExpansion e;
  e.add({0, 0}, scale);
  e.add({2, 0}, -scale / std::sqrt(5.0));
  return e;
}

bool is_band_limited(AngularFactor factor) {
  const int am = std::abs(factor.azimuthal);
  return factor.sin_power >= am && (factor.sin_power - am) % 2 == 0;
}

double extremal_harmonic_coefficient(int m) {
  // Y_L^{±L} = (∓1)^L sqrt((2L+1)!/4π) / (2^L L!) sin^L θ e^{±iLφ}
  const int L = std::abs(m);
  const double log_mag =
      L * std::log(2.0) + std::lgamma(L + 1.0) + 0.5 * (std::log(4.0 * kPi) - std::lgamma(2.0 * L + 2.0));
  const double sign = (m >= 0 && L % 2 == 1) ? -1.0 : 1.0;
  return sign * std::exp(log_mag);
}

HarmonicExpansion expand_sin_power_phase(AngularFactor factor, double drop_tolerance) {
  if (factor.sin_power < 0) throw std::invalid_argument("sin power must be non-negative");
  if (!is_band_limited(factor)) {
    throw std::domain_error("(sin θ)^" + std::to_string(factor.sin_power) + " e^{i" +
                            std::to_string(factor.azimuthal) +
                            "φ} has no finite spherical-harmonic expansion (need n >= |m|, n - |m| even)");
  }
  const int am = std::abs(factor.azimuthal);
  HarmonicExpansion out =
      HarmonicExpansion::single({am, factor.azimuthal}, extremal_harmonic_coefficient(factor.azimuthal));
  const HarmonicExpansion sin2 = sin_squared_expansion();
  for (int k = 0; k < (factor.sin_power - am) / 2; ++k) out = multiply(out, sin2, 0.0);
  return out.prune(drop_tolerance);
}

Complex matrix_element(const HarmonicExpansion& operator_series, HarmonicIndex initial, HarmonicIndex final) {
  require_valid(initial);
  require_valid(final);
  Complex sum{};
  for (const auto& [index, c] : operator_series.terms()) {
    if (index.M + initial.M != final.M) continue;
    sum += c * product_expansion(index, initial, 0.0).coefficient(final);
  }
  return sum;
}

}  // namespace oamion::angular
