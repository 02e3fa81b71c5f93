#pragma once

#include "ppide/grid.hpp"
#include "ppide/model.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ppide {

/// Quadrature weight at the origin sample of the one-sided kernel.
/// rectangle gives every node weight h (first order at alpha = -1);
/// trapezoid halves the origin weight (second order at alpha = -1). The two
/// coincide for alpha != -1 where the origin sample is zero.
enum class OriginConvention { rectangle, trapezoid };

/// Circulant embedding of the Toeplitz jump-quadrature matrix
///   T_{ij} = w_{j-i} f_{j-i},  f_d = lambda e^{-nu |d| h} / (|d| h)^{1+alpha}
/// over the padded grid (n nodes, circulant size 2n). One-sided: f_d = 0 for
/// d < 0 (positive side) or d > 0 (negative side). The origin sample f_0 is
/// lambda when alpha = -1 (the kernel's finite limit) and 0 otherwise.
struct ToeplitzKernel {
    std::size_t n = 0; ///< Toeplitz dimension = padded grid size
    double h = 0.0;
    JumpSide side = JumpSide::positive;
    OriginConvention origin = OriginConvention::rectangle;
    /// Circulant first row, size 2n, laid out (k_0, k_1, ..., k_{n-1}, 0,
    /// k_{1-n}, ..., k_{-1}); k_d = w_d f_d.
    std::vector<double> first_row;
    /// DFT of the circulant's first column (the reversed first row), cached
    /// for repeated matvecs.
    std::vector<std::complex<double>> spectrum;
};

/// Samples the kernel on the padded grid and precomputes the spectrum.
/// Requires alpha < 0 (finite jump activity), nu > 0, lambda > 0.
ToeplitzKernel build_toeplitz_kernel(const ExtendedGrid& g, double lambda, double nu,
                                     double alpha, JumpSide side = JumpSide::positive,
                                     OriginConvention origin = OriginConvention::rectangle);

/// In-place iterative radix-2 complex FFT; size must be a power of two.
/// inverse = true applies the 1/n scaling.
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse);

/// The jump-integral quadrature V_i = sum_d k_d C_{i+d} for every padded-grid
/// node, computed as one circulant multiply (zero-extended to size 2n, so no
/// wrap-around touches real data). c must have kernel.n entries.
std::vector<double> fft_jump_integral(const ToeplitzKernel& kernel, std::span<const double> c);

/// Explicit Euler march of d C/d tau = J[C] - compensated * comp_value * C on
/// the padded grid. Throws numeric_error naming the step index if the state
/// stops being finite.
std::vector<double> euler_march(const ToeplitzKernel& kernel, std::vector<double> c0,
                                double theta, std::size_t n_time, bool compensated,
                                double comp_value);

/// Closed form of integral_0^inf (x + y) e^{-nu y} y^{-(1+alpha)} dy:
///   (x nu - alpha) nu^{alpha-1} Gamma(-alpha).  Requires alpha < 0, nu > 0.
double test_integral_exact(double x, double nu, double alpha);

/// FFT quadrature of the same integral with C(x) = x seeded on the whole
/// padded grid (lambda = 1). Returns the padded-grid result; window nodes are
/// at g.window_offset .. g.window_offset + g.window_size - 1.
std::vector<double> test_integral_fft(const ExtendedGrid& g, double nu, double alpha,
                                      OriginConvention origin = OriginConvention::rectangle);

} // namespace ppide
