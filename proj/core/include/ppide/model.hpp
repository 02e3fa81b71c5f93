#pragma once

#include "ppide/grid.hpp"

#include <vector>

namespace ppide {

enum class JumpSide { positive, negative };
enum class OptionKind { put, call };

/// Tempered-stable jump parameters, one triple per tail:
///   mu(y) = lambda_minus e^{-nu_minus |y|} / |y|^{1+alpha_minus}, y < 0
///         + lambda_plus  e^{-nu_plus  y}   / y^{1+alpha_plus},   y > 0
/// v_r / v_l are the side weights sqrt(V_R), sqrt(V_L) multiplying the
/// right/left jump integrals in the evolution equation.
struct GtspParams {
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    double nu_plus = 0.0;
    double nu_minus = 0.0;
    double alpha_plus = 0.0;
    double alpha_minus = 0.0;
    double v_r = 1.0;
    double v_l = 1.0;

    /// Throws config_error unless lambda > 0, nu > 0, alpha < 2 on both sides
    /// and the side weights are positive.
    void validate() const;
};

/// One tail's parameters, selected for a single-sided solve.
struct SideParams {
    double lambda = 0.0;
    double nu = 0.0;
    double alpha = 0.0;
    double sqrt_v = 1.0;
};

SideParams select_side(const GtspParams& p, JumpSide side);

struct MarketConfig {
    double strike = 100.0;
    double rate = 0.0;
    double vol = 0.1;
    double maturity = 0.0;
    OptionKind option_kind = OptionKind::put;

    void validate() const;
};

/// The jump measure density at y != 0.
double levy_density(double y, const GtspParams& p);

/// The small-jump compensator weight lambda nu^alpha Gamma(-alpha), finite for
/// alpha < 0. Throws numeric_error at alpha = 0 (Gamma pole).
double compensator(double lambda, double nu, double alpha);

/// Black-Scholes price; t = 0 degenerates to the payoff.
double black_scholes_price(double spot, double strike, double rate, double vol,
                           double t, OptionKind kind);

/// Terminal data for the tau-march: the Black-Scholes value (smooth seed) at
/// every grid node, S = e^x.
std::vector<double> terminal_condition(const Grid& g, const MarketConfig& m);

} // namespace ppide
