#pragma once

#include "ppide/banded.hpp"
#include "ppide/model.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace ppide {

/// Result of measuring the iteration matrix lhs^{-1} rhs of one time step.
struct RadiusMeasurement {
    double radius = 0.0;     ///< best available estimate of max |eigenvalue|
    bool exact = false;      ///< triangular constant-diagonal ratio (closed form)
    bool converged = false;  ///< estimate settled within tolerance (always true
                             ///< on the exact path)
    std::size_t iterations = 0;
};

struct StabilityReport {
    double zeta_analytic = 0.0;          ///< closed-form operator eigenvalue
    double spectral_radius_measured = 0.0;
    double inf_norm_measured = 0.0;      ///< ||lhs^{-1} rhs||_inf, the norm bound
    bool stable = false;                 ///< radius <= 1 + 1e-12 and measurement usable
    std::string condition;               ///< e.g. "nu>=1 unconditional"
};

/// Eigenvalue of the jump operator's discrete inverse on the one-sided grid:
///   zeta = sqrt_v lambda Gamma(-alpha) [ (nu + 3/(2h))^alpha - nu^alpha ],
/// strictly negative for alpha < 0. The side only selects which tail's
/// parameters the caller passed; the formula is side-symmetric.
double zeta_B(double sqrt_v, double lambda, double nu, double alpha, double h,
              JumpSide side = JumpSide::positive);

/// Spectral radius of lhs^{-1} rhs. Triangular pairs with constant main
/// diagonals (the one-sided Toeplitz-closure operators) use the exact
/// diagonal ratio; everything else falls back to power iteration. A
/// non-converged estimate is reported with converged = false, never as
/// stable.
RadiusMeasurement measure_spectral_radius(const BandedMatrix& lhs, const BandedMatrix& rhs,
                                          std::size_t max_iterations = 5000,
                                          double tol = 1e-10);

/// Exact ||lhs^{-1} rhs||_inf via one solve per column. O(n^2 bandwidth).
double iteration_inf_norm(const BandedMatrix& lhs, const BandedMatrix& rhs);

/// Bundles the measurements into a report; stable requires a usable
/// (exact or converged) radius within 1 + 1e-12.
StabilityReport assess_pair(const BandedMatrix& lhs, const BandedMatrix& rhs,
                            double zeta_analytic, std::string condition);

/// Admissible step bound for the alpha = 0 factor (I -+ D1/nu): no bound for
/// nu >= 1 (unconditional), else h must stay below 3 / (2 (1 - nu)).
std::optional<double> vg_max_stable_h(double nu);

} // namespace ppide
