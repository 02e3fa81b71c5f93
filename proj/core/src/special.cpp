#include "ppide/special.hpp"
#include "ppide/errors.hpp"

#include <cmath>
#include <string>

namespace ppide {

namespace {

// Classic Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

double gamma_positive(double z) {
    // Valid for z >= 0.5.
    double a = kLanczos[0];
    const double t = z + 6.5; // z + g - 0.5
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z - 1.0 + i);
    return std::sqrt(2.0 * M_PI) * std::pow(t, z - 0.5) * std::exp(-t) * a;
}

} // namespace

double gamma_fn(double z) {
    if (z >= 0.5) return gamma_positive(z);
    if (z == std::floor(z)) {
        throw numeric_error("gamma_fn: pole at non-positive integer z=" + std::to_string(z));
    }
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return M_PI / (std::sin(M_PI * z) * gamma_positive(1.0 - z));
}

double factorial(int n) {
    if (n < 0) throw numeric_error("factorial: negative argument");
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

} // namespace ppide
