#pragma once

#include "ppide/banded.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace ppide {

/// Pade approximant of exp(z) used for one time step: (1,1) = Crank-Nicolson
/// (order 2), (1,2) order 3, (2,2) order 4 and symmetric.
enum class PadeScheme { cn11, pade12, pade22 };

/// Direction of the evolution d C/d tau = +- (sqrt_v/2) A^{-1} C. The growth
/// sign is the pricing march; the decay sign is the contractive pair whose
/// iteration matrix has spectral radius < 1 (see stability.hpp).
enum class RateSign { growth, decay };

struct SchemeConfig {
    PadeScheme pade = PadeScheme::cn11;
    double theta = 0.0;    ///< time step, > 0
    double sqrt_v = 1.0;   ///< rate weight: B = (sqrt_v/2) A^{-1}
    bool compensated = false; ///< subtract a constant reaction term (cn11 only)
    RateSign sign = RateSign::growth;
};

/// One Crank-Nicolson step of d C/d tau = +-(sqrt_v/2) A^{-1} C:
///   (A -+ (sqrt_v theta/4) I) C^{k+1} = (A +- (sqrt_v theta/4) I) C^k.
/// The system matrix keeps A's band profile; for the one-sided tail operators
/// it is triangular and solved by pure substitution.
std::vector<double> cn_step(const BandedMatrix& a, const SchemeConfig& cfg,
                            std::span<const double> c_k);

/// Pade(1,2) step: (A^2 -+ (2 b theta/3) A + (b theta)^2/6 I) C^{k+1}
///               = (A^2 +- (b theta/3) A) C^k,  b = sqrt_v/2.
std::vector<double> pade12_step(const BandedMatrix& a, const SchemeConfig& cfg,
                                std::span<const double> c_k);

/// Pade(2,2) step: (A^2 -+ (b theta/2) A + (b theta)^2/12 I) C^{k+1}
///               = (A^2 +- (b theta/2) A + (b theta)^2/12 I) C^k.
/// Satisfies step(theta) then step(-theta) = identity up to roundoff.
std::vector<double> pade22_step(const BandedMatrix& a, const SchemeConfig& cfg,
                                std::span<const double> c_k);

/// Crank-Nicolson for the compensated evolution
/// d C/d tau = (+-(sqrt_v/2) A^{-1} - comp I) C:
///   ((1 + comp theta/2) A -+ (sqrt_v theta/4) I) C^{k+1}
/// = ((1 - comp theta/2) A +- (sqrt_v theta/4) I) C^k.
/// comp = 0 reduces to cn_step.
std::vector<double> cn_step_compensated(const BandedMatrix& a, const SchemeConfig& cfg,
                                        std::span<const double> c_k, double comp);

/// Crank-Nicolson step for the exponential-kernel model,
///   (A - (theta lambda/2)(A + alpha^2 I)) u^{k+1}
/// = (A + (theta lambda/2)(A + alpha^2 I)) u^k,
/// where A = build_basic_operator(alpha, n, h).
std::vector<double> basic_model_step(const BandedMatrix& a_basic, double alpha,
                                     double lambda, double theta,
                                     std::span<const double> u_k);

/// Re-usable march: builds the scheme's lhs/rhs once, factors the lhs, and
/// applies steps. Throws numeric_error if a step produces non-finite values.
class PpMarcher {
public:
    PpMarcher(const BandedMatrix& a, const SchemeConfig& cfg, double comp = 0.0);

    std::vector<double> step(std::vector<double> c) const;
    std::vector<double> march(std::vector<double> c0, std::size_t n_steps) const;

    const BandedMatrix& lhs() const { return lhs_; }
    const BandedMatrix& rhs() const { return rhs_; }

private:
    explicit PpMarcher(std::pair<BandedMatrix, BandedMatrix> pair);

    BandedMatrix lhs_;
    BandedMatrix rhs_;
    BandedLU lu_;
};

} // namespace ppide
