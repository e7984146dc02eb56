#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace oamion::angular {

using Rational = boost::multiprecision::cpp_rational;

/// A Clebsch-Gordan coefficient held exactly as sign * sqrt(square).
struct ExactCoefficient {
  int sign = 0;  // -1, 0 or +1
  Rational square{0};

  bool is_zero() const { return sign == 0; }
  double to_double() const;
};

/// <l1, l2; m1, m2 | L, M> by the Racah closed form in exact rational arithmetic.
///
/// Returns an exact zero when M != m1 + m2 or the triangle condition fails.
/// Throws std::invalid_argument for negative l or |m| > l.
ExactCoefficient clebsch_gordan_exact(int l1, int l2, int m1, int m2, int L, int M);

/// Double-precision value of clebsch_gordan_exact(), memoized behind a shared mutex.
double clebsch_gordan(int l1, int l2, int m1, int m2, int L, int M);

}  // namespace oamion::angular
