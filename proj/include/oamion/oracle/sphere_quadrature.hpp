#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "oamion/angular/harmonic.hpp"
#include "oamion/angular/selection_rules.hpp"

namespace oamion::oracle {

using angular::AngularFactor;
using angular::HarmonicIndex;

/// Integrals below this magnitude count as zero.
inline constexpr double kZeroThreshold = 1e-12;
/// Integrals above this magnitude count as nonzero; values in between are flagged.
inline constexpr double kNonzeroThreshold = 1e-8;

/// Gauss-Legendre nodes in cos θ times a uniform trapezoid in φ.
///
/// Exact for integrands sin^{2k}θ P(cos θ) e^{ikφ} with deg P <= 2 n_theta − 1
/// and |k| < n_phi.
class SphereQuadrature {
 public:
  SphereQuadrature(int n_theta, int n_phi);

  /// Smallest mesh exact for triple products with L <= max_L and an extra factor of degree extra.
  static SphereQuadrature for_degree(int max_L, int extra_degree);

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  const std::vector<double>& theta() const { return theta_; }
  const std::vector<double>& theta_weights() const { return weights_; }
  double phi(int j) const;
  double phi_weight() const;

  /// True when polynomial degree `degree` in (cos θ, sin θ) and azimuthal order max_m integrate exactly.
  bool resolves(int degree, int max_m) const;

  /// ∫ f(θ, φ) dΩ.
  Complex integrate(const std::function<Complex(double, double)>& f) const;

 private:
  int n_theta_;
  int n_phi_;
  std::vector<double> theta_;
  std::vector<double> weights_;
};

/// ∫ Y_a^* (sin θ)^n e^{imφ} Y_b dΩ by direct quadrature.
///
/// Writes a warning to stderr when the mesh cannot integrate the product exactly.
Complex integrate_triple(AngularFactor f, HarmonicIndex a, HarmonicIndex b, const SphereQuadrature& quad);

/// ∫ Y_a^* Y_b dΩ.
Complex integrate_overlap(HarmonicIndex a, HarmonicIndex b, const SphereQuadrature& quad);

/// Projection ∫ Y_{LM}^* f dΩ of a factor onto one harmonic.
Complex project(AngularFactor f, HarmonicIndex target, const SphereQuadrature& quad);

struct TupleEntry {
  HarmonicIndex initial;
  HarmonicIndex final;
  Complex value;
  bool rule_allowed = false;
};

/// Result of scanning every (Li, Mi, Lf, Mf) with Li, Lf <= l_max.
struct RuleVerificationReport {
  angular::SelectionRuleSet rules;
  int l_max = 0;
  std::size_t tuples_scanned = 0;
  std::vector<TupleEntry> disagreements;    // oracle nonzero but forbidden
  std::vector<TupleEntry> accidental_zeros; // rule-allowed but oracle zero
  std::vector<TupleEntry> unresolved;       // between the zero and nonzero thresholds
  std::vector<TupleEntry> nonzero;          // every oracle-nonzero tuple
  /// Allowed (ΔL, ΔM) classes that occur within l_max, with the largest |integral| seen.
  std::map<std::pair<int, int>, double> class_max;
  /// Allowed classes reachable within l_max with no nonzero tuple.
  std::vector<std::pair<int, int>> missing_classes;

  bool verified() const { return disagreements.empty() && unresolved.empty(); }
  std::string to_json() const;
};

/// Angular integrand of the given interaction term, evaluated pointwise.
Complex interaction_integrand(const angular::SelectionRuleSet& rules, double theta, double phi);

RuleVerificationReport verify_rule_set(const angular::SelectionRuleSet& rules, int l_max,
                                       const SphereQuadrature& quad);

}  // namespace oamion::oracle
