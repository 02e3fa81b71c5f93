#include "ppide/stability.hpp"

#include "ppide/errors.hpp"
#include "ppide/special.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace ppide {

namespace {

/// The main diagonal's single value if it is exactly constant, else nothing.
std::optional<double> constant_diagonal(const BandedMatrix& m) {
    const double* d = m.band(0);
    for (std::size_t i = 1; i < m.size(); ++i) {
        if (d[i] != d[0]) {
            return std::nullopt;
        }
    }
    return d[0];
}

bool same_orientation_triangular(const BandedMatrix& a, const BandedMatrix& b) {
    const bool both_upper = a.lower_bw() == 0 && b.lower_bw() == 0;
    const bool both_lower = a.upper_bw() == 0 && b.upper_bw() == 0;
    return both_upper || both_lower;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return std::sqrt(s);
}

} // namespace

double zeta_B(double sqrt_v, double lambda, double nu, double alpha, double h,
              JumpSide side) {
    (void)side;
    if (!(alpha < 0.0)) {
        throw config_error("zeta_B requires alpha < 0");
    }
    if (!(nu > 0.0) || !(h > 0.0)) {
        throw config_error("zeta_B requires nu > 0 and h > 0");
    }
    const double shifted = nu + 3.0 / (2.0 * h);
    return sqrt_v * lambda * gamma_fn(-alpha) *
           (std::pow(shifted, alpha) - std::pow(nu, alpha));
}

RadiusMeasurement measure_spectral_radius(const BandedMatrix& lhs, const BandedMatrix& rhs,
                                          std::size_t max_iterations, double tol) {
    if (lhs.size() != rhs.size() || lhs.size() == 0) {
        throw config_error("spectral radius needs two same-size matrices");
    }

    if (same_orientation_triangular(lhs, rhs)) {
        const auto dl = constant_diagonal(lhs);
        const auto dr = constant_diagonal(rhs);
        if (dl && dr && *dl != 0.0) {
            // Triangular iteration matrix: every eigenvalue is the same
            // diagonal ratio.
            return {std::abs(*dr / *dl), true, true, 0};
        }
    }

    const BandedLU lu(lhs);
    const std::size_t n = lhs.size();
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = 1.0 / static_cast<double>(i + 1);
    }
    double prev_growth = 0.0;
    double prev_estimate = -1.0;
    std::size_t settled = 0;
    RadiusMeasurement out;
    for (std::size_t k = 1; k <= max_iterations; ++k) {
        std::vector<double> y = lu.solve(band_matvec(rhs, x));
        const double growth = norm2(y);
        out.iterations = k;
        if (growth == 0.0) {
            return {0.0, false, true, k};
        }
        for (double& v : y) {
            v /= growth;
        }
        x = std::move(y);
        // Defective or complex-pair spectra make single-step growth oscillate;
        // the geometric mean of consecutive growths settles either way.
        const double estimate = k == 1 ? growth : std::sqrt(growth * prev_growth);
        if (prev_estimate > 0.0 && std::abs(estimate - prev_estimate) <= tol * estimate) {
            if (++settled >= 3) {
                out.radius = estimate;
                out.converged = true;
                return out;
            }
        } else {
            settled = 0;
        }
        prev_growth = growth;
        prev_estimate = estimate;
        out.radius = estimate;
    }
    out.converged = false;
    return out;
}

double iteration_inf_norm(const BandedMatrix& lhs, const BandedMatrix& rhs) {
    if (lhs.size() != rhs.size() || lhs.size() == 0) {
        throw config_error("inf norm needs two same-size matrices");
    }
    const BandedLU lu(lhs);
    const std::size_t n = lhs.size();
    std::vector<double> row_sums(n, 0.0);
    std::vector<double> e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        const std::vector<double> col = lu.solve(band_matvec(rhs, e));
        for (std::size_t i = 0; i < n; ++i) {
            row_sums[i] += std::abs(col[i]);
        }
        e[j] = 0.0;
    }
    double norm = 0.0;
    for (double s : row_sums) {
        norm = std::max(norm, s);
    }
    return norm;
}

StabilityReport assess_pair(const BandedMatrix& lhs, const BandedMatrix& rhs,
                            double zeta_analytic, std::string condition) {
    const RadiusMeasurement r = measure_spectral_radius(lhs, rhs);
    StabilityReport rep;
    rep.zeta_analytic = zeta_analytic;
    rep.spectral_radius_measured = r.radius;
    rep.inf_norm_measured = iteration_inf_norm(lhs, rhs);
    rep.stable = (r.exact || r.converged) && r.radius <= 1.0 + 1e-12;
    rep.condition = std::move(condition);
    return rep;
}

std::optional<double> vg_max_stable_h(double nu) {
    if (!(nu > 0.0)) {
        throw config_error("vg admissibility requires nu > 0");
    }
    if (nu >= 1.0) {
        return std::nullopt;
    }
    return 3.0 / (2.0 * (1.0 - nu));
}

} // namespace ppide
