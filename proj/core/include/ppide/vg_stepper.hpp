#pragma once

#include "ppide/banded.hpp"
#include "ppide/model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ppide {

/// One time step of the log-generator evolution (the alpha = 0 tail):
///   C^{k+1} = (1 -+ d/dx / nu)^{-m} C^k,  m = sqrt_v lambda theta.
/// Integer powers m are exact triangular solves with the factor
/// (I -+ D1/nu); real m is recovered by Lagrange interpolation across the
/// integer powers listed in interpolation_orders.
struct VgStepConfig {
    JumpSide side = JumpSide::positive;
    double m_real = 0.0;  ///< fractional power, 0 <= m_real < interpolation_orders.back()
    double nu = 1.0;      ///< tempering rate
    double h = 0.0;       ///< grid step
    std::vector<int> interpolation_orders = {0, 1, 2};
};

/// Throws config_error if the step is inadmissible: the factor's eigenvalue
/// magnitude (1 + 3/(2 h nu))^{-1} stays <= 1 for nu >= 1 unconditionally,
/// and for nu < 1 requires h < 3 / (2 (1 - nu)) (else |1 - D/nu| has
/// off-diagonal growth). Also validates the interpolation node list.
void vg_validate(const VgStepConfig& cfg);

/// Largest-magnitude eigenvalue of the m-power step matrix: (1+3/(2 h nu))^{-m}.
double vg_step_eigenvalue(double h, double nu, double m);

/// Exact integer-power step: m_int successive triangular solves.
std::vector<double> vg_integer_step(const VgStepConfig& cfg, int m_int,
                                    std::span<const double> c_k);

/// Real-power step via Lagrange interpolation across the configured integer
/// orders (default quadratic through m = 0, 1, 2).
std::vector<double> vg_step(const VgStepConfig& cfg, std::span<const double> c_k);

/// Lagrange weights for target t over the given integer nodes.
std::vector<double> lagrange_weights(const std::vector<int>& nodes, double t);

/// March helper: factors (I -+ D1/nu) once, reuses it for every step.
class VgMarcher {
public:
    VgMarcher(const VgStepConfig& cfg, std::size_t n);

    std::vector<double> step(std::vector<double> c) const;
    std::vector<double> march(std::vector<double> c0, std::size_t n_steps) const;

    /// The single triangular factor (I -+ D1/nu), for stability reporting.
    const BandedMatrix& factor() const { return factor_; }

private:
    VgStepConfig cfg_;
    BandedMatrix factor_;
    BandedLU lu_;
    std::vector<double> weights_;
};

} // namespace ppide
