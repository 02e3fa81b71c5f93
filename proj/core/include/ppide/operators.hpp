#pragma once

#include "ppide/banded.hpp"
#include "ppide/model.hpp"

#include <cstddef>

namespace ppide {

/// Specification of the banded tail operator
///   A = (1 / (lambda p!)) (nu I -+ D1)^{p+1},
/// whose inverse equals the one-sided jump integral with kernel
/// lambda e^{-nu y} y^p (p = -(1+alpha) for integer alpha <= -1):
///   positive side: (nu I - D1_forward),  integral over y > 0,
///   negative side: (nu I + D1_backward), integral over y < 0.
struct OperatorSpec {
    JumpSide side = JumpSide::positive;
    int p = 0;            ///< kernel power, p >= 0
    double nu = 1.0;      ///< tempering rate, > 0
    double lambda = 1.0;  ///< jump intensity, > 0
    std::size_t n = 0;    ///< grid size
    double h = 0.0;       ///< grid step, > 0
};

/// Second-order one-sided first derivative, forward variant:
/// row stencil (-3, 4, -1)/(2h) on diagonals (0, +1, +2). Upper triangular;
/// rows at the right edge are truncated (Toeplitz closure), so every diagonal
/// is constant and the eigenvalues all equal -3/(2h).
BandedMatrix build_forward_d1(std::size_t n, double h);

/// Backward variant: row stencil (3, -4, 1)/(2h) on diagonals (0, -1, -2).
/// Lower triangular, eigenvalues all 3/(2h).
BandedMatrix build_backward_d1(std::size_t n, double h);

/// Assembles A by repeated band products of (nu I -+ D1); bandwidth 2p+3
/// diagonals, one-sided. The diagonal is exactly (nu + 3/(2h))^{p+1}/(lambda p!).
BandedMatrix build_A_operator(const OperatorSpec& spec);

/// The exponential-kernel model's operator D2 - alpha^2 I (central second
/// difference, symmetric tridiagonal). Its Green function is e^{-alpha|x|}/(2 alpha);
/// requires alpha > 0 (alpha = 0 has no integrable kernel and is rejected).
BandedMatrix build_basic_operator(double alpha, std::size_t n, double h);

} // namespace ppide
