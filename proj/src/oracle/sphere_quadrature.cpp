#include "oamion/oracle/sphere_quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <iostream>
#include <memory>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace oamion::oracle {
namespace {

void warn_unresolved(int degree, int max_m, const SphereQuadrature& quad) {
  std::cerr << "warning: sphere quadrature (" << quad.n_theta() << " x " << quad.n_phi()
            << ") does not integrate degree " << degree << ", azimuthal order " << max_m << " exactly\n";
}

int factor_degree(const angular::SelectionRuleSet& rules) {
  const int n = std::abs(rules.ell);
  return rules.part == angular::HamiltonianPart::HI ? n + 1 : 2 * n;
}

int factor_azimuthal(const angular::SelectionRuleSet& rules) {
  const int n = std::abs(rules.ell);
  return rules.part == angular::HamiltonianPart::HI ? n + 1 : 2 * n;
}

nlohmann::json entry_json(const TupleEntry& e) {
  return {{"Li", e.initial.L}, {"Mi", e.initial.M}, {"Lf", e.final.L},       {"Mf", e.final.M},
          {"re", e.value.real()}, {"im", e.value.imag()}, {"rule_allowed", e.rule_allowed}};
}

}  // namespace

SphereQuadrature::SphereQuadrature(int n_theta, int n_phi) : n_theta_(n_theta), n_phi_(n_phi) {
  if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("sphere quadrature needs positive node counts");
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n_theta)), &gsl_integration_glfixed_table_free);
  if (!table) throw std::runtime_error("failed to build Gauss-Legendre table");
  theta_.resize(static_cast<std::size_t>(n_theta));
  weights_.resize(static_cast<std::size_t>(n_theta));
  for (int i = 0; i < n_theta; ++i) {
    double x = 0.0;
    double w = 0.0;
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i), &x, &w, table.get());
    theta_[static_cast<std::size_t>(i)] = std::acos(x);
    weights_[static_cast<std::size_t>(i)] = w;
  }
}

SphereQuadrature SphereQuadrature::for_degree(int max_L, int extra_degree) {
  const int degree = 2 * max_L + extra_degree;
  return SphereQuadrature(std::max(2 * max_L + 2, degree / 2 + 2), std::max(2 * max_L + 2, degree + 2));
}

double SphereQuadrature::phi(int j) const { return 2.0 * kPi * j / n_phi_; }
double SphereQuadrature::phi_weight() const { return 2.0 * kPi / n_phi_; }

bool SphereQuadrature::resolves(int degree, int max_m) const { return degree <= 2 * n_theta_ - 1 && max_m < n_phi_; }

Complex SphereQuadrature::integrate(const std::function<Complex(double, double)>& f) const {
  Complex sum{};
  for (int i = 0; i < n_theta_; ++i) {
    Complex ring{};
    for (int j = 0; j < n_phi_; ++j) ring += f(theta_[static_cast<std::size_t>(i)], phi(j));
    sum += weights_[static_cast<std::size_t>(i)] * ring;
  }
  return sum * phi_weight();
}

Complex integrate_triple(AngularFactor f, HarmonicIndex a, HarmonicIndex b, const SphereQuadrature& quad) {
  angular::require_valid(a);
  angular::require_valid(b);
  const int degree = a.L + b.L + f.sin_power;
  const int max_m = std::abs(a.M) + std::abs(b.M) + std::abs(f.azimuthal);
  if (!quad.resolves(degree, max_m)) warn_unresolved(degree, max_m, quad);
  return quad.integrate([&](double theta, double phi) {
    return std::conj(angular::spherical_harmonic(a.L, a.M, theta, phi)) * f.evaluate(theta, phi) *
           angular::spherical_harmonic(b.L, b.M, theta, phi);
  });
}

Complex integrate_overlap(HarmonicIndex a, HarmonicIndex b, const SphereQuadrature& quad) {
  return integrate_triple({0, 0}, a, b, quad);
}

Complex project(AngularFactor f, HarmonicIndex target, const SphereQuadrature& quad) {
  angular::require_valid(target);
  return quad.integrate([&](double theta, double phi) {
    return std::conj(angular::spherical_harmonic(target.L, target.M, theta, phi)) * f.evaluate(theta, phi);
  });
}

Complex interaction_integrand(const angular::SelectionRuleSet& rules, double theta, double phi) {
  const int n = std::abs(rules.ell);
  const double s = std::sin(theta);
  switch (rules.part) {
    case angular::HamiltonianPart::HI: {
      const Complex transverse = rules.pol.alpha * std::cos(phi) + rules.pol.beta * std::sin(phi);
      return std::pow(s, n + 1) * transverse * std::polar(1.0, rules.ell * phi);
    }
    case angular::HamiltonianPart::HII: {
      const Complex weight = rules.pol.alpha * rules.pol.alpha + rules.pol.beta * rules.pol.beta;
      return weight * std::pow(s, 2 * n) * std::polar(1.0, 2.0 * rules.ell * phi);
    }
    case angular::HamiltonianPart::HIIStatic: return std::pow(s, 2 * n);
  }
  return {};
}

RuleVerificationReport verify_rule_set(const angular::SelectionRuleSet& rules, int l_max,
                                       const SphereQuadrature& quad) {
  if (l_max < 0) throw std::invalid_argument("l_max must be non-negative");
  const int degree = 2 * l_max + factor_degree(rules);
  const int max_m = 2 * l_max + factor_azimuthal(rules);
  if (!quad.resolves(degree, max_m)) warn_unresolved(degree, max_m, quad);

  std::vector<HarmonicIndex> states;
  for (int L = 0; L <= l_max; ++L) {
    for (int M = -L; M <= L; ++M) states.push_back({L, M});
  }
  const std::size_t n_states = states.size();
  const std::size_t n_mesh = static_cast<std::size_t>(quad.n_theta()) * static_cast<std::size_t>(quad.n_phi());

  // Harmonics and integrand on the mesh; the quadrature weight is folded into the integrand.
  std::vector<Complex> ylm(n_states * n_mesh);
  std::vector<Complex> weighted(n_mesh);
  for (int i = 0; i < quad.n_theta(); ++i) {
    const double theta = quad.theta()[static_cast<std::size_t>(i)];
    const double w = quad.theta_weights()[static_cast<std::size_t>(i)] * quad.phi_weight();
    for (int j = 0; j < quad.n_phi(); ++j) {
      const std::size_t p = static_cast<std::size_t>(i) * static_cast<std::size_t>(quad.n_phi()) +
                            static_cast<std::size_t>(j);
      const double phi = quad.phi(j);
      weighted[p] = w * interaction_integrand(rules, theta, phi);
      for (std::size_t s = 0; s < n_states; ++s) {
        ylm[s * n_mesh + p] = angular::spherical_harmonic(states[s].L, states[s].M, theta, phi);
      }
    }
  }

  std::vector<Complex> values(n_states * n_states);
#pragma omp parallel for schedule(static)
  for (std::size_t si = 0; si < n_states; ++si) {
    std::vector<Complex> g(n_mesh);
    for (std::size_t p = 0; p < n_mesh; ++p) g[p] = weighted[p] * ylm[si * n_mesh + p];
    for (std::size_t sf = 0; sf < n_states; ++sf) {
      Complex sum{};
      for (std::size_t p = 0; p < n_mesh; ++p) sum += std::conj(ylm[sf * n_mesh + p]) * g[p];
      values[si * n_states + sf] = sum;
    }
  }

  RuleVerificationReport report;
  report.rules = rules;
  report.l_max = l_max;
  std::set<std::pair<int, int>> reachable_classes;
  for (std::size_t si = 0; si < n_states; ++si) {
    for (std::size_t sf = 0; sf < n_states; ++sf) {
      TupleEntry e{states[si], states[sf], values[si * n_states + sf], rules.allows(states[si], states[sf])};
      ++report.tuples_scanned;
      const double mag = std::abs(e.value);
      const std::pair<int, int> cls{e.final.L - e.initial.L, e.final.M - e.initial.M};
      if (e.rule_allowed) {
        reachable_classes.insert(cls);
        auto& best = report.class_max[cls];
        best = std::max(best, mag);
      }
      if (mag > kNonzeroThreshold) {
        report.nonzero.push_back(e);
        if (!e.rule_allowed) report.disagreements.push_back(e);
      } else if (mag < kZeroThreshold) {
        if (e.rule_allowed) report.accidental_zeros.push_back(e);
      } else {
        report.unresolved.push_back(e);
      }
    }
  }
  for (const auto& cls : reachable_classes) {
    if (report.class_max[cls] <= kNonzeroThreshold) report.missing_classes.push_back(cls);
  }
  return report;
}

std::string RuleVerificationReport::to_json() const {
  nlohmann::json out;
  out["rules"] = nlohmann::json::parse(rules.to_json());
  out["l_max"] = l_max;
  out["tuples_scanned"] = tuples_scanned;
  out["verified"] = verified();
  auto list = [](const std::vector<TupleEntry>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& e : v) a.push_back(entry_json(e));
    return a;
  };
  out["disagreements"] = list(disagreements);
  out["accidental_zeros"] = list(accidental_zeros);
  out["unresolved"] = list(unresolved);
  out["nonzero"] = list(nonzero);
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& [cls, mag] : class_max) {
    classes.push_back({{"delta_L", cls.first}, {"delta_M", cls.second}, {"max_abs", mag}});
  }
  out["allowed_classes"] = classes;
  nlohmann::json missing = nlohmann::json::array();
  for (const auto& [dl, dm] : missing_classes) missing.push_back({{"delta_L", dl}, {"delta_M", dm}});
  out["missing_classes"] = missing;
  return out.dump(2);
}

}  // namespace oamion::oracle
