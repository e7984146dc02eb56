#include <doctest.h>

#include <gsl/gsl_eigen.h>
#include <gsl/gsl_matrix.h>

#include <cmath>
#include <map>
#include <random>
#include <thread>
#include <vector>

#include "oamion/angular/clebsch_gordan.hpp"

using namespace oamion::angular;

namespace {

double ladder(int l, int m, int sign) { return std::sqrt(double(l * (l + 1) - m * (m + sign))); }

// Independent construction: |L, L> as the top eigenvector of J² in the M = L
// product block, then repeated application of J− = J1− + J2−.
std::map<int, std::vector<double>> coupled_states(int l1, int l2, int L) {
  auto block = [&](int M) {
    std::vector<int> m1s;
    for (int m1 = -l1; m1 <= l1; ++m1) {
      if (std::abs(M - m1) <= l2) m1s.push_back(m1);
    }
    return m1s;
  };
  const auto top = block(L);
  const std::size_t n = top.size();
  gsl_matrix* j2 = gsl_matrix_calloc(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    const int m1 = top[a];
    const int m2 = L - m1;
    gsl_matrix_set(j2, a, a, l1 * (l1 + 1) + l2 * (l2 + 1) + 2.0 * m1 * m2);
    for (std::size_t b = 0; b < n; ++b) {
      if (top[b] == m1 + 1) gsl_matrix_set(j2, b, a, ladder(l1, m1, 1) * ladder(l2, m2, -1));
      if (top[b] == m1 - 1) gsl_matrix_set(j2, b, a, ladder(l1, m1, -1) * ladder(l2, m2, 1));
    }
  }
  gsl_vector* eval = gsl_vector_alloc(n);
  gsl_matrix* evec = gsl_matrix_alloc(n, n);
  gsl_eigen_symmv_workspace* ws = gsl_eigen_symmv_alloc(n);
  gsl_eigen_symmv(j2, eval, evec, ws);
  std::map<int, std::vector<double>> states;
  std::vector<double> psi(static_cast<std::size_t>(2 * l1 + 1), 0.0);  // indexed by m1 + l1
  for (std::size_t e = 0; e < n; ++e) {
    if (std::abs(gsl_vector_get(eval, e) - L * (L + 1.0)) < 1e-8) {
      for (std::size_t a = 0; a < n; ++a) psi[static_cast<std::size_t>(top[a] + l1)] = gsl_matrix_get(evec, a, e);
    }
  }
  gsl_eigen_symmv_free(ws);
  gsl_matrix_free(evec);
  gsl_vector_free(eval);
  gsl_matrix_free(j2);
  // Condon-Shortley: <l1 l2; l1, L − l1 | L L> > 0
  if (psi[static_cast<std::size_t>(2 * l1)] < 0.0) {
    for (auto& v : psi) v = -v;
  }
  states[L] = psi;
  for (int M = L; M > -L; --M) {
    std::vector<double> next(psi.size(), 0.0);
    for (int m1 = -l1; m1 <= l1; ++m1) {
      const double c = psi[static_cast<std::size_t>(m1 + l1)];
      const int m2 = M - m1;
      if (c == 0.0 || std::abs(m2) > l2) continue;
      if (m1 > -l1) next[static_cast<std::size_t>(m1 - 1 + l1)] += c * ladder(l1, m1, -1);
      if (m2 > -l2) next[static_cast<std::size_t>(m1 + l1)] += c * ladder(l2, m2, -1);
    }
    const double norm = ladder(L, M, -1);
    for (auto& v : next) v /= norm;
    psi = next;
    states[M - 1] = psi;
  }
  return states;
}

}  // namespace

TEST_CASE("appendix identity <l-1,2;0,0|l,0> vanishes exactly") {
  for (int ell = 1; ell <= 10; ++ell) {
    const ExactCoefficient c = clebsch_gordan_exact(ell - 1, 2, 0, 0, ell, 0);
    CHECK(c.is_zero());
    CHECK(c.square == 0);
    CHECK(clebsch_gordan(ell - 1, 2, 0, 0, ell, 0) == 0.0);
  }
}

TEST_CASE("coupling with a scalar is the identity") {
  for (int l = 0; l <= 12; ++l) {
    for (int m = -l; m <= l; ++m) {
      const ExactCoefficient c = clebsch_gordan_exact(l, 0, m, 0, l, m);
      CHECK(c.sign == 1);
      CHECK(c.square == 1);
    }
  }
}

TEST_CASE("known table values") {
  CHECK(clebsch_gordan(1, 1, 1, -1, 0, 0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(clebsch_gordan(1, 1, 0, 0, 0, 0) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(clebsch_gordan(1, 1, 0, 0, 2, 0) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
  CHECK(clebsch_gordan(1, 1, 1, 0, 2, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(clebsch_gordan(1, 1, 1, 0, 1, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(clebsch_gordan(1, 1, 0, 1, 1, 1) == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("selection zeros") {
  CHECK(clebsch_gordan(2, 1, 1, 1, 3, 1) == 0.0);  // M != m1 + m2
  CHECK(clebsch_gordan(1, 1, 0, 0, 3, 0) == 0.0);  // triangle
  CHECK(clebsch_gordan(1, 1, 0, 0, 1, 0) == 0.0);  // odd l1 + l2 + L with zero projections
}

TEST_CASE("domain violations throw") {
  CHECK_THROWS_AS(clebsch_gordan(-1, 1, 0, 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(clebsch_gordan(1, 1, 2, 0, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(clebsch_gordan_exact(2, 1, 0, -2, 1, -2), std::invalid_argument);
}

TEST_CASE("matches the J² eigenvector and lowering-operator construction") {
  for (int l1 = 0; l1 <= 5; ++l1) {
    for (int l2 = 0; l2 <= 4; ++l2) {
      for (int L = std::abs(l1 - l2); L <= l1 + l2; ++L) {
        const auto states = coupled_states(l1, l2, L);
        for (int M = -L; M <= L; ++M) {
          for (int m1 = -l1; m1 <= l1; ++m1) {
            const int m2 = M - m1;
            if (std::abs(m2) > l2) continue;
            const double expected = states.at(M)[static_cast<std::size_t>(m1 + l1)];
            INFO("l1=" << l1 << " l2=" << l2 << " m1=" << m1 << " m2=" << m2 << " L=" << L << " M=" << M);
            CHECK(clebsch_gordan(l1, l2, m1, m2, L, M) == doctest::Approx(expected).epsilon(1e-10).scale(1.0));
          }
        }
      }
    }
  }
}

TEST_CASE("three-term recurrence in M holds") {
  for (int l1 = 0; l1 <= 6; ++l1) {
    for (int l2 = 0; l2 <= 6; ++l2) {
      for (int L = std::abs(l1 - l2); L <= l1 + l2; ++L) {
        for (int M = -L; M < L; ++M) {
          for (int m1 = -l1; m1 <= l1; ++m1) {
            const int m2 = M + 1 - m1;
            if (std::abs(m2) > l2) continue;
            // J+ applied to |L, M>
            auto cg = [&](int a, int b) {
              return (std::abs(a) <= l1 && std::abs(b) <= l2) ? clebsch_gordan(l1, l2, a, b, L, a + b) : 0.0;
            };
            const double lhs = ladder(L, M, 1) * cg(m1, m2);
            const double rhs = ladder(l1, m1, -1) * cg(m1 - 1, m2) + ladder(l2, m2, -1) * cg(m1, m2 - 1);
            CHECK(lhs == doctest::Approx(rhs).scale(1.0).epsilon(1e-12));
          }
        }
      }
    }
  }
}

TEST_CASE("symmetry under m -> -m (randomized, l <= 8)") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> pick_l(0, 8);
  for (int trial = 0; trial < 2000; ++trial) {
    const int l1 = pick_l(rng);
    const int l2 = pick_l(rng);
    std::uniform_int_distribution<int> pick_m1(-l1, l1);
    std::uniform_int_distribution<int> pick_m2(-l2, l2);
    std::uniform_int_distribution<int> pick_L(std::abs(l1 - l2), l1 + l2);
    const int m1 = pick_m1(rng);
    const int m2 = pick_m2(rng);
    const int L = pick_L(rng);
    const int M = m1 + m2;
    if (std::abs(M) > L) continue;
    const double sign = ((l1 + l2 - L) % 2 == 0) ? 1.0 : -1.0;
    CHECK(clebsch_gordan(l1, l2, m1, m2, L, M) ==
          doctest::Approx(sign * clebsch_gordan(l1, l2, -m1, -m2, L, -M)).scale(1.0).epsilon(1e-14));
  }
}

TEST_CASE("orthogonality over (m1, m2)") {
  for (int l1 = 0; l1 <= 5; ++l1) {
    for (int l2 = 0; l2 <= 5; ++l2) {
      for (int L = std::abs(l1 - l2); L <= l1 + l2; ++L) {
        for (int Lp = std::abs(l1 - l2); Lp <= l1 + l2; ++Lp) {
          for (int M = -std::min(L, Lp); M <= std::min(L, Lp); ++M) {
            double sum = 0.0;
            for (int m1 = -l1; m1 <= l1; ++m1) {
              const int m2 = M - m1;
              if (std::abs(m2) > l2) continue;
              sum += clebsch_gordan(l1, l2, m1, m2, L, M) * clebsch_gordan(l1, l2, m1, m2, Lp, M);
            }
            CHECK(sum == doctest::Approx(L == Lp ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));
          }
        }
      }
    }
  }
}

TEST_CASE("exact arithmetic survives large angular momenta") {
  // Stretched coupling: <l, l; l, −l | 0, 0> = 1/√(2l+1) up to sign (−1)^{l−m1}
  for (int l = 10; l <= 30; l += 5) {
    const ExactCoefficient c = clebsch_gordan_exact(l, l, l, -l, 0, 0);
    CHECK(c.square == Rational(1, 2 * l + 1));
    CHECK(c.sign == 1);
  }
}

TEST_CASE("memoized values are consistent across threads") {
  std::vector<double> results(8, 0.0);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < results.size(); ++t) {
    pool.emplace_back([&, t] {
      double s = 0.0;
      for (int l = 0; l <= 6; ++l) {
        for (int m = -l; m <= l; ++m) s += clebsch_gordan(l, 2, m, 0, l + 2, m);
      }
      results[t] = s;
    });
  }
  for (auto& th : pool) th.join();
  for (double r : results) CHECK(r == results.front());
}
