#pragma once

#include "ppide/grid.hpp"
#include "ppide/infvar_stepper.hpp"
#include "ppide/model.hpp"
#include "ppide/pp_stepper.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ppide {

/// Request to price at a non-integer tail index alpha by marching the four
/// integer-alpha anchor problems and interpolating the solutions pointwise.
struct AlphaQuery {
    double alpha_real = 0.0;
    std::array<int, 4> anchor_alphas{}; ///< sorted, distinct, each <= 1
};

/// Default anchor set: for alpha <= 0 the four nearest integers <= 0 (ties go
/// to the lower integer), e.g. {-3,-2,-1,0} for -1 < alpha < 0 and
/// {-4,-3,-2,-1} for alpha = -2.5; for alpha > 0 the set {-2,-1,0,1} (targets
/// above 1 are extrapolation and flagged as such in the result).
std::array<int, 4> default_anchors(double alpha_real);

/// Cubic Lagrange interpolation through four (x, y) nodes.
double cubic_lagrange(const std::array<std::pair<double, double>, 4>& nodes, double target);

/// Everything an anchor march needs besides its alpha. Anchors at alpha <= -1
/// march the banded tail operator with the configured Pade scheme; alpha = 0
/// uses the log-generator power step; alpha = 1 uses the tempering-integral
/// factorization. If any anchor is >= 0 the family must be compensated (the
/// alpha >= 0 generators only exist in compensated form).
struct BridgeProblem {
    Grid grid;
    SideParams side;
    JumpSide jump_side = JumpSide::positive;
    PadeScheme pade = PadeScheme::cn11;
    RateSign sign = RateSign::growth;
    bool compensated = false;
    double nu_star = 300.0;               ///< alpha = 1 anchor settings
    std::size_t m_intervals = 80;
    TimeOrder time_order = TimeOrder::order2;
    unsigned threads = 1;
};

struct AnchorSolution {
    int alpha = 0;
    std::string scheme; ///< which family solved it, e.g. "pp-cn11", "vg-quadratic"
    std::vector<double> values;
};

struct AlphaPriceResult {
    std::vector<double> values; ///< interpolated solution on the grid
    std::array<int, 4> anchors{};
    bool extrapolation = false; ///< alpha_real outside [anchors.front(), anchors.back()]
    std::vector<AnchorSolution> anchor_solutions;
};

/// Marches one integer-alpha anchor from c0 over the grid's time axis.
AnchorSolution solve_anchor(int alpha, const BridgeProblem& prob, std::span<const double> c0);

/// Full bridge: all four anchors (parallel across prob.threads), then
/// pointwise cubic Lagrange interpolation in alpha.
AlphaPriceResult price_real_alpha(const AlphaQuery& q, const BridgeProblem& prob,
                                  std::span<const double> c0);

} // namespace ppide
