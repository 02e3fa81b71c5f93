#include "ppide/grid.hpp"
#include "ppide/errors.hpp"

#include <cmath>
#include <string>

namespace ppide {

Grid build_grid(double x_min, double x_max, std::size_t n_space, double maturity,
                std::size_t n_time) {
    if (!(x_min < x_max)) throw config_error("build_grid: x_min must be < x_max");
    if (n_space < 4) throw config_error("build_grid: n_space must be >= 4");
    if (!(maturity >= 0.0) || !std::isfinite(maturity))
        throw config_error("build_grid: maturity must be finite and >= 0");
    Grid g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.n_space = n_space;
    g.h = (x_max - x_min) / static_cast<double>(n_space);
    g.n_time = n_time;
    g.maturity = maturity;
    g.theta = n_time == 0 ? 0.0 : maturity / static_cast<double>(n_time);
    return g;
}

ExtendedGrid extend_fft_domain(const Grid& g) {
    if (g.n_space < 4 || g.n_space % 2 != 0)
        throw config_error("extend_fft_domain: n_space must be even and >= 4");
    const std::size_t n = g.n_space;
    ExtendedGrid e;
    e.window_offset = n / 2 - 1;
    e.window_size = n;
    e.padded = g;
    e.padded.n_space = 2 * n;
    e.padded.x_min = g.x_min - static_cast<double>(e.window_offset) * g.h;
    e.padded.x_max = e.padded.x_min + static_cast<double>(2 * n) * g.h;
    e.padded.h = g.h; // preserved exactly, not recomputed from the new bounds
    return e;
}

} // namespace ppide
