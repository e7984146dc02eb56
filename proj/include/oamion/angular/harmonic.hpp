#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>

#include "oamion/common.hpp"

namespace oamion::angular {

/// Index (L, M) of a spherical harmonic Y_L^M.
struct HarmonicIndex {
  int L = 0;
  int M = 0;

  bool valid() const { return L >= 0 && M >= -L && M <= L; }
  friend auto operator<=>(const HarmonicIndex&, const HarmonicIndex&) = default;
};

/// Throws std::invalid_argument unless |M| <= L and L >= 0.
void require_valid(const HarmonicIndex& index);

/// Complex spherical harmonic with the Condon-Shortley phase.
Complex spherical_harmonic(int L, int M, double theta, double phi);

inline constexpr double kDefaultDropTolerance = 1e-14;

/// A finite spherical-harmonic series sum_{L,M} c_{LM} Y_L^M.
///
/// Keys always satisfy |M| <= L. Coefficients whose magnitude falls below the
/// drop tolerance are removed by prune(), which every producing operation in
/// this module calls before returning.
class HarmonicExpansion {
 public:
  using Terms = std::map<HarmonicIndex, Complex>;

  HarmonicExpansion() = default;
  explicit HarmonicExpansion(Terms terms);

  static HarmonicExpansion single(HarmonicIndex index, Complex coefficient);

  void add(HarmonicIndex index, Complex coefficient);
  HarmonicExpansion& prune(double tolerance = kDefaultDropTolerance);

  Complex coefficient(HarmonicIndex index) const;
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  int max_L() const;

  Complex evaluate(double theta, double phi) const;

  HarmonicExpansion& operator*=(Complex s);
  HarmonicExpansion& operator+=(const HarmonicExpansion& other);
  friend HarmonicExpansion operator*(Complex s, HarmonicExpansion e) { return e *= s; }
  friend HarmonicExpansion operator+(HarmonicExpansion a, const HarmonicExpansion& b) { return a += b; }

  /// JSON array of {L, M, re, im} objects, sorted by (L, M).
  std::string to_json() const;

 private:
  Terms terms_;
};

/// The angular function (sin theta)^n e^{i m phi}.
struct AngularFactor {
  int sin_power = 0;
  int azimuthal = 0;

  Complex evaluate(double theta, double phi) const;
  friend bool operator==(const AngularFactor&, const AngularFactor&) = default;
};

/// Transverse polarization of the vector potential, A ∝ Re[(alpha x̂ + beta ŷ) e^{-iωt}].
struct Polarization {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};

  static Polarization linear_x() { return {1.0, 0.0}; }
  static Polarization linear_y() { return {0.0, 1.0}; }
  /// alpha = 1, beta = i (normalized): A rotates counter-clockwise, ΔM = ℓ + 1.
  static Polarization circular_right();
  /// alpha = 1, beta = -i (normalized): ΔM = ℓ − 1.
  static Polarization circular_left();

  /// Parses "linear-x", "linear-y", "circ-right", "circ-left".
  static Polarization parse(std::string_view name);
  /// Canonical name if this matches one of the named states, otherwise "custom".
  std::string name() const;

  double norm() const { return std::sqrt(std::norm(alpha) + std::norm(beta)); }
  Polarization normalized() const;

  friend bool operator==(const Polarization&, const Polarization&) = default;
};

}  // namespace oamion::angular
