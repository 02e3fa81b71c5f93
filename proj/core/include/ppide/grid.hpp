#pragma once

#include <cstddef>

namespace ppide {

/// Uniform space/time grid. Space nodes are x_i = x_min + i h, i = 0..n_space-1
/// (the right endpoint x_max is not a node: h = (x_max - x_min) / n_space, so
/// the Fourier-window convention h = 2 x* / N holds on symmetric domains).
struct Grid {
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t n_space = 0;
    double h = 0.0;

    std::size_t n_time = 0;
    double maturity = 0.0;
    double theta = 0.0; ///< time step; 0 when n_time == 0 (no evolution)

    double x(std::size_t i) const { return x_min + static_cast<double>(i) * h; }
};

/// Validates bounds and counts, computes h and theta. n_time = 0 is allowed
/// and yields theta = 0 (a zero-step march echoes its initial data).
Grid build_grid(double x_min, double x_max, std::size_t n_space, double maturity,
                std::size_t n_time);

/// A grid extended for circulant convolution: the window (-x*, x*) with N nodes
/// is padded by N/2 nodes on each side (2N total, same h). The first padded
/// node sits at -x* - h (N/2 - 1), so window node i corresponds to padded node
/// i + window_offset.
struct ExtendedGrid {
    Grid padded;                ///< 2N nodes, same h and time axis
    std::size_t window_offset;  ///< index of the window's first node (= N/2 - 1)
    std::size_t window_size;    ///< N
};

/// Doubles a symmetric-window grid for wrap-around-free convolution.
/// Requires n_space even and >= 4.
ExtendedGrid extend_fft_domain(const Grid& g);

} // namespace ppide
