#pragma once

namespace lwta {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// psi(x) for x > 0: upward recurrence to x >= 6, then the asymptotic series.
double digamma(double x);
/// psi'(x) for x > 0, same scheme.
double trigamma(double x);

}  // namespace lwta
