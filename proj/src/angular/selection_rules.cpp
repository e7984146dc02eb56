#include "oamion/angular/selection_rules.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "oamion/angular/algebra.hpp"

namespace oamion::angular {
namespace {

constexpr double kPolarizationZero = 1e-12;

const HarmonicExpansion& cached_factor(int n, int m) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, HarmonicExpansion> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find({n, m});
  if (it == cache.end()) it = cache.emplace(std::pair{n, m}, expand_sin_power_phase({n, m})).first;
  return it->second;
}

// Weights of the e^{i(ℓ+1)φ} and e^{i(ℓ−1)φ} branches:
// α cosφ + β sinφ = (α − iβ)/2 e^{iφ} + (α + iβ)/2 e^{−iφ}.
Complex raising_weight(const Polarization& pol) { return 0.5 * (pol.alpha - kI * pol.beta); }
Complex lowering_weight(const Polarization& pol) { return 0.5 * (pol.alpha + kI * pol.beta); }

}  // namespace

std::string to_string(HamiltonianPart part) {
  switch (part) {
    case HamiltonianPart::HI: return "HI";
    case HamiltonianPart::HII: return "HII";
    case HamiltonianPart::HIIStatic: return "HII-static";
  }
  return "?";
}

HamiltonianPart parse_hamiltonian_part(const std::string& name) {
  if (name == "HI") return HamiltonianPart::HI;
  if (name == "HII") return HamiltonianPart::HII;
  if (name == "HII-static") return HamiltonianPart::HIIStatic;
  throw std::invalid_argument("unknown Hamiltonian part '" + name + "'");
}

bool SelectionRuleSet::allows(HarmonicIndex initial, HarmonicIndex final) const {
  if (!initial.valid() || !final.valid()) return false;
  const int dL = final.L - initial.L;
  if (std::abs(dL) > max_abs_delta_L) return false;
  if ((dL + parity_offset) % 2 != 0) return false;
  return allowed_delta_M.contains(final.M - initial.M);
}

bool SelectionRuleSet::allows_conjugate(HarmonicIndex initial, HarmonicIndex final) const {
  // Emission partner: same |ΔL| and parity constraints, ΔM negated.
  return allows({initial.L, -initial.M}, {final.L, -final.M});
}

std::string SelectionRuleSet::to_json() const {
  nlohmann::json out = {{"part", to_string(part)},
                        {"ell", ell},
                        {"polarization", pol.name()},
                        {"max_abs_delta_L", max_abs_delta_L},
                        {"delta_L_parity", parity_offset % 2 == 0 ? "even" : "odd"},
                        {"delta_M", allowed_delta_M}};
  return out.dump();
}

std::string SelectionRuleSet::describe() const {
  std::ostringstream os;
  os << to_string(part) << ": |ΔL| <= " << max_abs_delta_L << ", ΔL " << (parity_offset % 2 == 0 ? "even" : "odd")
     << ", ΔM ∈ {";
  bool first = true;
  for (int dm : allowed_delta_M) {
    if (!first) os << ", ";
    first = false;
    os << dm;
  }
  os << '}';
  if (allowed_delta_M.empty()) os << " (term vanishes for this polarization)";
  return os.str();
}

SelectionRuleSet derive_selection_rules(int ell, const Polarization& pol, HamiltonianPart part) {
  SelectionRuleSet rules;
  rules.part = part;
  rules.ell = ell;
  rules.pol = pol;
  const int n = std::abs(ell);
  switch (part) {
    case HamiltonianPart::HI:
      rules.max_abs_delta_L = n + 1;
      rules.parity_offset = n + 1;
      if (std::abs(raising_weight(pol)) > kPolarizationZero) rules.allowed_delta_M.insert(ell + 1);
      if (std::abs(lowering_weight(pol)) > kPolarizationZero) rules.allowed_delta_M.insert(ell - 1);
      break;
    case HamiltonianPart::HII:
      rules.max_abs_delta_L = 2 * n;
      rules.parity_offset = 0;
      if (std::abs(pol.alpha * pol.alpha + pol.beta * pol.beta) > kPolarizationZero) {
        rules.allowed_delta_M.insert(2 * ell);
      }
      break;
    case HamiltonianPart::HIIStatic:
      rules.max_abs_delta_L = 2 * n;
      rules.parity_offset = 0;
      rules.allowed_delta_M.insert(0);
      break;
  }
  return rules;
}

Complex hi_angular_coupling(int ell, const Polarization& pol, HarmonicIndex initial, HarmonicIndex final) {
  require_valid(initial);
  require_valid(final);
  const int n = std::abs(ell) + 1;
  Complex out{};
  const Complex up = raising_weight(pol);
  const Complex down = lowering_weight(pol);
  if (up != Complex{} && final.M - initial.M == ell + 1) {
    out += up * matrix_element(cached_factor(n, ell + 1), initial, final);
  }
  if (down != Complex{} && final.M - initial.M == ell - 1) {
    out += down * matrix_element(cached_factor(n, ell - 1), initial, final);
  }
  return out;
}

Complex hii_angular_coupling(int ell, const Polarization& pol, HarmonicIndex initial, HarmonicIndex final) {
  require_valid(initial);
  require_valid(final);
  const Complex weight = pol.alpha * pol.alpha + pol.beta * pol.beta;
  if (weight == Complex{} || final.M - initial.M != 2 * ell) return {};
  return weight * matrix_element(cached_factor(2 * std::abs(ell), 2 * ell), initial, final);
}

Complex hii_static_angular_coupling(int ell, HarmonicIndex initial, HarmonicIndex final) {
  require_valid(initial);
  require_valid(final);
  if (final.M != initial.M) return {};
  return matrix_element(cached_factor(2 * std::abs(ell), 0), initial, final);
}

Complex angular_coupling(HamiltonianPart part, int ell, const Polarization& pol, HarmonicIndex initial,
                         HarmonicIndex final) {
  switch (part) {
    case HamiltonianPart::HI: return hi_angular_coupling(ell, pol, initial, final);
    case HamiltonianPart::HII: return hii_angular_coupling(ell, pol, initial, final);
    case HamiltonianPart::HIIStatic: return hii_static_angular_coupling(ell, initial, final);
  }
  return {};
}

}  // namespace oamion::angular
