#pragma once

#include "ppide/banded.hpp"
#include "ppide/model.hpp"
#include "ppide/vg_stepper.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ppide {

/// Temporal accuracy of the per-factor sub-steps: order2 = Crank-Nicolson
/// convection + quadratic power interpolation; order3 = Pade(1,2) convection +
/// cubic power interpolation.
enum class TimeOrder { order2, order3 };

/// The alpha = 1 tail generator, written as an integral over tempering rates,
///   L = sqrt_v lambda Integral_nu^nu_star [ log nu' - log(nu' -+ d/dx)
///       + log((nu' -+ 1)/nu') d/dx ] d nu',
/// discretized by composite Simpson with m_intervals (even) panels. One time
/// step is the product over quadrature nodes of a convection factor and a
/// fractional-power factor; all factors commute in the continuum, so the
/// ordering is free up to O(theta^2) grid effects.
struct InfVarConfig {
    JumpSide side = JumpSide::positive;
    double nu = 2.0;       ///< model tempering; positive side requires nu > 1
    double lambda = 0.0;
    double sqrt_v = 1.0;
    double nu_star = 300.0;       ///< upper integration cutoff
    std::size_t m_intervals = 80; ///< Simpson panel count, even, >= 2
    double theta = 0.0;
    TimeOrder time_order = TimeOrder::order2;
    double h = 0.0; ///< grid step

    void validate() const;
};

/// Composite Simpson weights (1, 4, 2, ..., 2, 4, 1), size m_intervals + 1.
/// The quadrature factor (nu_star - nu) / (3 m_intervals) is applied by the
/// caller. Throws config_error unless m_intervals is even and >= 2.
std::vector<double> simpson_weights(std::size_t m_intervals);

/// Crank-Nicolson step of the convection factor exp(theta kappa d/dx) with
/// kappa = m_arg log((nu_i -+ 1)/nu_i):
///   (I - (kappa theta/2) D) C* = (I + (kappa theta/2) D) C,
/// D upwinded: backward D1 on the positive side (kappa < 0), forward on the
/// negative side (kappa > 0). m_arg is the node's bare quadrature weight
/// (no theta folded in; theta enters here once).
std::vector<double> convection_factor_step(double nu_i, double m_arg, double theta,
                                           JumpSide side, double h,
                                           std::span<const double> c);

/// Pade(1,2) variant of the convection step (third order in theta):
///   (I - (2/3) Z + Z^2/6) C* = (I + Z/3) C,  Z = theta kappa D.
std::vector<double> order3_convection_step(double nu_i, double m_arg, double theta,
                                           JumpSide side, double h,
                                           std::span<const double> c);

/// Fractional-power factor (1 -+ d/dx / nu_i)^{-m_i} via the integer-power
/// interpolation step; m_i is the theta-folded exponent. cubic selects the
/// {0,1,2,3} node set (order3), else {0,1,2}.
std::vector<double> fractional_factor_step(double nu_i, double m_i, JumpSide side,
                                           double h, std::span<const double> c,
                                           bool cubic = false);

/// One full time step: the Simpson-weighted product of convection and
/// fractional factors across all quadrature nodes.
std::vector<double> infvar_step(const InfVarConfig& cfg, std::span<const double> c_k);

/// March helper: factors every per-node matrix once.
class InfVarMarcher {
public:
    InfVarMarcher(const InfVarConfig& cfg, std::size_t n);

    std::vector<double> step(std::vector<double> c) const;
    std::vector<double> march(std::vector<double> c0, std::size_t n_steps) const;

private:
    struct Factor {
        BandedLU conv_lu;
        BandedMatrix conv_rhs;
        VgMarcher frac;
    };

    InfVarConfig cfg_;
    std::vector<Factor> factors_;
};

} // namespace ppide
