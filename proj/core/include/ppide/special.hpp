#pragma once

namespace ppide {

/// Gamma function for real non-pole arguments, Lanczos approximation (g=7, 9
/// coefficients) with the reflection formula for z < 0.5. Relative accuracy is
/// ~1e-13 over the range used here (half-integers and small positive reals).
/// Throws numeric_error at poles (z = 0, -1, -2, ...).
double gamma_fn(double z);

/// n! as a double; exact for n <= 20. Throws numeric_error for n < 0.
double factorial(int n);

} // namespace ppide
