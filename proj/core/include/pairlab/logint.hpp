#pragma once

#include "pairlab/numeric.hpp"

namespace pairlab {

/// |w| at or below which Ei uses the power series; above it the
/// asymptotic expansion truncated at its smallest term.
inline constexpr double kEiSeriesRadius = 40.0;

/// Absolute-or-relative accuracy promised by li and li2.
inline constexpr double kLogIntTolerance = 1e-8;

/// li(x) = ∫_2^x dt / log t. Throws DomainError for x < 2.
double li(double x);

/// li_2(x) = ∫_2^x dt / log^2 t. Throws DomainError for x < 2.
double li2(double x);

/// Exponential integral Ei(w) with the principal logarithm, so that
/// Ei(w) = γ + log w + Σ w^k / (k k!). Throws DomainError at w = 0.
Complex ei(Complex w);

/// The two evaluation routes behind ei(), exposed for cross-checks.
/// The series is summed in extended precision, which keeps it accurate
/// out to |w| ≈ 45 even where the terms cancel.
Complex ei_power_series(Complex w);
Complex ei_asymptotic(Complex w, double* error_bound = nullptr);

/// li(x^ρ) with lower limit 2 along the ray w = ρ t, t ∈ [log 2, log x]:
/// Ei(ρ log x) - Ei(ρ log 2).
Complex li_complex_power(double x, Complex rho);

/// li_2(x^ρ) with lower limit 2 along the same ray:
/// F(ρ log x) - F(ρ log 2), F(w) = Ei(w) - e^w / w. Reduces to li2(x)
/// at ρ = 1 and has d/dx = x^(ρ-1) / (ρ log^2 x).
/// Requires x > 4 and 0 < Re ρ <= 1.
Complex li2_complex_power(double x, Complex rho);

}  // namespace pairlab
