#include "ppide/operators.hpp"
#include "ppide/errors.hpp"
#include "ppide/special.hpp"

#include <algorithm>
#include <cmath>

namespace ppide {

namespace {

void check_grid_args(std::size_t n, double h, const char* who) {
    if (n < 4) throw config_error(std::string(who) + ": n must be >= 4");
    if (!(h > 0.0) || !std::isfinite(h))
        throw config_error(std::string(who) + ": h must be > 0");
}

} // namespace

BandedMatrix build_forward_d1(std::size_t n, double h) {
    check_grid_args(n, h, "build_forward_d1");
    BandedMatrix m(n, 0, 2);
    const double c0 = -3.0 / (2.0 * h), c1 = 4.0 / (2.0 * h), c2 = -1.0 / (2.0 * h);
    std::fill(m.band(0), m.band(0) + m.band_end(0), c0);
    std::fill(m.band(1) + m.band_begin(1), m.band(1) + m.band_end(1), c1);
    std::fill(m.band(2) + m.band_begin(2), m.band(2) + m.band_end(2), c2);
    return m;
}

BandedMatrix build_backward_d1(std::size_t n, double h) {
    check_grid_args(n, h, "build_backward_d1");
    BandedMatrix m(n, 2, 0);
    const double c0 = 3.0 / (2.0 * h), c1 = -4.0 / (2.0 * h), c2 = 1.0 / (2.0 * h);
    std::fill(m.band(0), m.band(0) + m.band_end(0), c0);
    std::fill(m.band(-1) + m.band_begin(-1), m.band(-1) + m.band_end(-1), c1);
    std::fill(m.band(-2) + m.band_begin(-2), m.band(-2) + m.band_end(-2), c2);
    return m;
}

BandedMatrix build_A_operator(const OperatorSpec& spec) {
    if (spec.p < 0) throw config_error("build_A_operator: p must be >= 0");
    if (!(spec.nu > 0.0)) throw config_error("build_A_operator: nu must be > 0");
    if (!(spec.lambda > 0.0)) throw config_error("build_A_operator: lambda must be > 0");
    check_grid_args(spec.n, spec.h, "build_A_operator");

    // factor = nu I - D1_f (positive side) or nu I + D1_b (negative side);
    // both have the constant diagonal nu + 3/(2h).
    BandedMatrix factor = spec.side == JumpSide::positive
                              ? build_forward_d1(spec.n, spec.h).scale(-1.0)
                              : build_backward_d1(spec.n, spec.h);
    factor.add_scaled_identity(spec.nu);

    BandedMatrix a = factor;
    for (int k = 1; k <= spec.p; ++k) a = band_mul(a, factor);
    a.scale(1.0 / (spec.lambda * factorial(spec.p)));
    return a;
}

BandedMatrix build_basic_operator(double alpha, std::size_t n, double h) {
    if (!(alpha > 0.0))
        throw config_error("build_basic_operator: alpha must be > 0 (alpha = 0 rejected)");
    check_grid_args(n, h, "build_basic_operator");
    BandedMatrix m(n, 1, 1);
    const double c = 1.0 / (h * h);
    std::fill(m.band(0), m.band(0) + m.band_end(0), -2.0 * c - alpha * alpha);
    std::fill(m.band(1) + m.band_begin(1), m.band(1) + m.band_end(1), c);
    std::fill(m.band(-1) + m.band_begin(-1), m.band(-1) + m.band_end(-1), c);
    return m;
}

} // namespace ppide
