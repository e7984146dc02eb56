#pragma once

#include "oamion/angular/harmonic.hpp"

namespace oamion::angular {

/// Expansion of Y_{l1}^{m1} Y_{l2}^{m2} in spherical harmonics.
///
/// Terms live on |l1 - l2| <= L <= l1 + l2 with M = m1 + m2 only.
HarmonicExpansion product_expansion(HarmonicIndex a, HarmonicIndex b,
                                    double drop_tolerance = kDefaultDropTolerance);

/// Pointwise product of two finite series, expanded term by term with product_expansion().
HarmonicExpansion multiply(const HarmonicExpansion& lhs, const HarmonicExpansion& rhs,
                           double drop_tolerance = kDefaultDropTolerance);

/// sin^2 θ = (4√π/3) (Y_0^0 − Y_2^0/√5).
HarmonicExpansion sin_squared_expansion();

/// Expansion of (sin θ)^n e^{imφ}.
///
/// Built from the extremal harmonic Y_{|m|}^{m} ∝ sin^{|m|}θ e^{imφ} followed by
/// (n − |m|)/2 multiplications with sin_squared_expansion(). The series is
/// finite (L <= n) only when n >= |m| and n − |m| is even; any other factor
/// throws std::domain_error.
HarmonicExpansion expand_sin_power_phase(AngularFactor factor,
                                         double drop_tolerance = kDefaultDropTolerance);

/// True when expand_sin_power_phase() accepts the factor.
bool is_band_limited(AngularFactor factor);

/// Coefficient k with (sin θ)^{|m|} e^{imφ} = k Y_{|m|}^{m}.
double extremal_harmonic_coefficient(int m);

/// <Y_final | f | Y_initial> = ∫ Y_final^* f Y_initial dΩ with f given as a series.
Complex matrix_element(const HarmonicExpansion& operator_series, HarmonicIndex initial, HarmonicIndex final);

}  // namespace oamion::angular
