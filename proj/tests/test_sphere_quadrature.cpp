#include <doctest.h>

#include <json.hpp>

#include <cmath>

#include "oamion/angular/algebra.hpp"
#include "oamion/oracle/sphere_quadrature.hpp"

using namespace oamion;
using namespace oamion::angular;
using namespace oamion::oracle;

TEST_CASE("triple-product examples") {
  const auto quad = SphereQuadrature::for_degree(4, 2);
  CHECK(std::abs(integrate_triple({0, 0}, {0, 0}, {0, 0}, quad) - Complex{1.0, 0.0}) < 1e-14);
  const Complex expected = extremal_harmonic_coefficient(2) / std::sqrt(4.0 * kPi);
  CHECK(std::abs(integrate_triple({2, 2}, {2, 2}, {0, 0}, quad) - expected) < 1e-13);
  CHECK(std::abs(integrate_triple({2, 0}, {1, 1}, {0, 0}, quad)) < kZeroThreshold);
}

TEST_CASE("orthonormality through L = 12") {
  const auto quad = SphereQuadrature::for_degree(12, 0);
  double worst = 0.0;
  for (int La = 0; La <= 12; ++La) {
    for (int Ma = -La; Ma <= La; ++Ma) {
      for (int Lb = 0; Lb <= 12; ++Lb) {
        for (int Mb = -Lb; Mb <= Lb; ++Mb) {
          const Complex v = integrate_overlap({La, Ma}, {Lb, Mb}, quad);
          const double target = (La == Lb && Ma == Mb) ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(v - target));
        }
      }
    }
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("doubling the mesh leaves resolved integrals unchanged") {
  const auto base = SphereQuadrature::for_degree(6, 4);
  const SphereQuadrature fine(2 * base.n_theta(), 2 * base.n_phi());
  for (int n = 0; n <= 4; ++n) {
    for (int m = -n; m <= n; m += 2) {
      for (int La = 0; La <= 6; ++La) {
        for (int Lb = 0; Lb <= 6; ++Lb) {
          for (int Mb = -Lb; Mb <= Lb; ++Mb) {
            const int Ma = Mb + m;
            if (std::abs(Ma) > La) continue;
            const Complex a = integrate_triple({n, m}, {La, Ma}, {Lb, Mb}, base);
            const Complex b = integrate_triple({n, m}, {La, Ma}, {Lb, Mb}, fine);
            CHECK(std::abs(a - b) < 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("resolution bookkeeping") {
  const SphereQuadrature q(4, 6);
  CHECK(q.resolves(7, 5));
  CHECK_FALSE(q.resolves(8, 5));
  CHECK_FALSE(q.resolves(7, 6));
  CHECK(q.theta().size() == 4);
  double total = 0.0;
  for (double w : q.theta_weights()) total += w;
  CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(SphereQuadrature(0, 4), std::invalid_argument);
}

TEST_CASE("projection reproduces the analytic expansion") {
  for (int n = 0; n <= 6; ++n) {
    for (int m = -n; m <= n; m += 1) {
      const AngularFactor f{n, m};
      if (!is_band_limited(f)) continue;
      const auto quad = SphereQuadrature::for_degree(n, n);
      const auto e = expand_sin_power_phase(f);
      for (int L = 0; L <= n + 1; ++L) {
        for (int M = -L; M <= L; ++M) CHECK(std::abs(project(f, {L, M}, quad) - e.coefficient({L, M})) < 1e-12);
      }
    }
  }
}

TEST_CASE("rule verification reports") {
  SUBCASE("ℓ = 1 dipole-like term through L = 6") {
    const auto rules = derive_selection_rules(1, Polarization::linear_x(), HamiltonianPart::HI);
    const auto report = verify_rule_set(rules, 6, SphereQuadrature::for_degree(6, 2));
    CHECK(report.disagreements.empty());
    CHECK(report.unresolved.empty());
    CHECK(report.verified());
    CHECK(report.missing_classes.empty());
    CHECK_FALSE(report.nonzero.empty());
    const auto j = nlohmann::json::parse(report.to_json());
    CHECK(j.contains("disagreements"));
  }
  SUBCASE("ℓ = 0 A² term is diagonal") {
    const auto rules = derive_selection_rules(0, Polarization::linear_x(), HamiltonianPart::HII);
    const auto report = verify_rule_set(rules, 6, SphereQuadrature::for_degree(6, 0));
    CHECK(report.verified());
    for (const auto& e : report.nonzero) CHECK(e.initial == e.final);
    CHECK(report.nonzero.size() == 49);
  }
  SUBCASE("ℓ = −2 A² term through L = 8") {
    const auto rules = derive_selection_rules(-2, Polarization::linear_x(), HamiltonianPart::HII);
    const auto report = verify_rule_set(rules, 8, SphereQuadrature::for_degree(8, 4));
    CHECK(report.verified());
    CHECK(report.missing_classes.empty());
  }
  SUBCASE("a deliberately wrong rule set is caught") {
    auto rules = derive_selection_rules(1, Polarization::linear_x(), HamiltonianPart::HI);
    rules.allowed_delta_M = {0};
    const auto report = verify_rule_set(rules, 4, SphereQuadrature::for_degree(4, 2));
    CHECK_FALSE(report.verified());
    for (const auto& e : report.disagreements) CHECK(e.final.M - e.initial.M == 2);
  }
}

TEST_CASE("interaction integrand matches the defining shape") {
  const auto rules = derive_selection_rules(2, Polarization::circular_left(), HamiltonianPart::HI);
  const double t = 1.1;
  const double p = 0.3;
  const Polarization pol = Polarization::circular_left();
  const Complex expected =
      (pol.alpha * std::cos(p) + pol.beta * std::sin(p)) * std::pow(std::sin(t), 3) * std::polar(1.0, 2.0 * p);
  CHECK(std::abs(interaction_integrand(rules, t, p) - expected) < 1e-14);
}
