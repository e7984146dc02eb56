#pragma once

#include <set>
#include <string>

#include "oamion/angular/harmonic.hpp"

namespace oamion::angular {

/// Part of the minimal-coupling interaction a rule set describes.
enum class HamiltonianPart {
  HI,        // symmetrized p·A term, oscillating at ω
  HII,       // oscillating (2ω) part of the A² term
  HIIStatic  // cycle-averaged A² well (ponderomotive term)
};

std::string to_string(HamiltonianPart part);
HamiltonianPart parse_hamiltonian_part(const std::string& name);

/// Allowed transitions (Li, Mi) -> (Lf, Mf) for one interaction term.
///
/// A transition is allowed when both indices are valid, |ΔL| <= max_abs_delta_L,
/// ΔL + parity_offset is even and ΔM is in allowed_delta_M.
struct SelectionRuleSet {
  HamiltonianPart part = HamiltonianPart::HI;
  int ell = 0;
  Polarization pol{};
  int max_abs_delta_L = 0;
  int parity_offset = 0;
  std::set<int> allowed_delta_M;

  bool allows(HarmonicIndex initial, HarmonicIndex final) const;
  /// Same predicate applied to the emission (c.c.) partner: ΔM -> −ΔM.
  bool allows_conjugate(HarmonicIndex initial, HarmonicIndex final) const;

  std::string to_json() const;
  std::string describe() const;
};

SelectionRuleSet derive_selection_rules(int ell, const Polarization& pol, HamiltonianPart part);

/// Angular coefficient of the e^{−iωt} part of the p·A interaction between
/// Y_initial and Y_final, i.e.
///   ∫ Y_f^* [α (sinθ)^{|ℓ|+1} cosφ e^{iℓφ} + β (sinθ)^{|ℓ|+1} sinφ e^{iℓφ}] Y_i dΩ.
///
/// Radial factors and the (E_i − E_f) prefactor are not included. The
/// e^{+iωt} (emission) coefficient is hi_angular_coupling(−ℓ, {α*, β*}, ...).
Complex hi_angular_coupling(int ell, const Polarization& pol, HarmonicIndex initial, HarmonicIndex final);

/// Angular coefficient of the e^{−2iωt} part of A²:
///   (α² + β²) ∫ Y_f^* (sinθ)^{2|ℓ|} e^{2iℓφ} Y_i dΩ.
Complex hii_angular_coupling(int ell, const Polarization& pol, HarmonicIndex initial, HarmonicIndex final);

/// Angular coefficient of the time-independent well: ∫ Y_f^* (sinθ)^{2|ℓ|} Y_i dΩ.
Complex hii_static_angular_coupling(int ell, HarmonicIndex initial, HarmonicIndex final);

/// Dispatches on part to one of the three coupling functions.
Complex angular_coupling(HamiltonianPart part, int ell, const Polarization& pol, HarmonicIndex initial,
                         HarmonicIndex final);

}  // namespace oamion::angular
