#include "ppide/infvar_stepper.hpp"
#include "ppide/errors.hpp"
#include "ppide/operators.hpp"
#include "ppide/vg_stepper.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace ppide {

namespace {

double convection_kappa(double nu_i, double m_arg, JumpSide side) {
    const double shifted = side == JumpSide::positive ? nu_i - 1.0 : nu_i + 1.0;
    if (!(shifted > 0.0))
        throw config_error("convection factor: requires nu > 1 on the positive side");
    return m_arg * std::log(shifted / nu_i);
}

BandedMatrix convection_d1(JumpSide side, std::size_t n, double h) {
    // Upwind: the positive side drifts left (kappa < 0), the negative side
    // drifts right (kappa > 0).
    return side == JumpSide::positive ? build_backward_d1(n, h) : build_forward_d1(n, h);
}

std::vector<int> power_nodes(bool cubic) {
    return cubic ? std::vector<int>{0, 1, 2, 3} : std::vector<int>{0, 1, 2};
}

} // namespace

void InfVarConfig::validate() const {
    if (side == JumpSide::positive && !(nu > 1.0))
        throw config_error("InfVarConfig: positive side requires nu > 1");
    if (side == JumpSide::negative && !(nu > 0.0))
        throw config_error("InfVarConfig: nu must be > 0");
    if (!(lambda > 0.0)) throw config_error("InfVarConfig: lambda must be > 0");
    if (!(sqrt_v > 0.0)) throw config_error("InfVarConfig: sqrt_v must be > 0");
    if (!(nu_star > nu)) throw config_error("InfVarConfig: nu_star must exceed nu");
    if (m_intervals < 2 || m_intervals % 2 != 0)
        throw config_error("InfVarConfig: m_intervals must be even and >= 2");
    if (!(theta > 0.0)) throw config_error("InfVarConfig: theta must be > 0");
    if (!(h > 0.0)) throw config_error("InfVarConfig: h must be > 0");
}

std::vector<double> simpson_weights(std::size_t m_intervals) {
    if (m_intervals < 2 || m_intervals % 2 != 0)
        throw config_error("simpson_weights: m_intervals must be even and >= 2");
    std::vector<double> w(m_intervals + 1, 1.0);
    for (std::size_t i = 1; i < m_intervals; ++i) w[i] = i % 2 == 1 ? 4.0 : 2.0;
    return w;
}

std::vector<double> convection_factor_step(double nu_i, double m_arg, double theta,
                                           JumpSide side, double h,
                                           std::span<const double> c) {
    const double kappa = convection_kappa(nu_i, m_arg, side);
    const double half = kappa * theta / 2.0;
    BandedMatrix d = convection_d1(side, c.size(), h);
    BandedMatrix lhs = d;
    lhs.scale(-half).add_scaled_identity(1.0);
    BandedMatrix rhs = d;
    rhs.scale(half).add_scaled_identity(1.0);
    return band_lu_solve(lhs, band_matvec(rhs, c));
}

std::vector<double> order3_convection_step(double nu_i, double m_arg, double theta,
                                           JumpSide side, double h,
                                           std::span<const double> c) {
    const double kappa = convection_kappa(nu_i, m_arg, side);
    const double zc = kappa * theta; // Z = zc * D
    BandedMatrix d = convection_d1(side, c.size(), h);
    const BandedMatrix d2 = band_mul(d, d);
    BandedMatrix lhs = band_combine(-2.0 * zc / 3.0, d, zc * zc / 6.0, d2);
    lhs.add_scaled_identity(1.0);
    BandedMatrix rhs = d;
    rhs.scale(zc / 3.0).add_scaled_identity(1.0);
    return band_lu_solve(lhs, band_matvec(rhs, c));
}

std::vector<double> fractional_factor_step(double nu_i, double m_i, JumpSide side,
                                           double h, std::span<const double> c,
                                           bool cubic) {
    VgStepConfig cfg;
    cfg.side = side;
    cfg.m_real = m_i;
    cfg.nu = nu_i;
    cfg.h = h;
    cfg.interpolation_orders = power_nodes(cubic);
    return vg_step(cfg, c);
}

std::vector<double> infvar_step(const InfVarConfig& cfg, std::span<const double> c_k) {
    InfVarMarcher m(cfg, c_k.size());
    return m.step(std::vector<double>(c_k.begin(), c_k.end()));
}

InfVarMarcher::InfVarMarcher(const InfVarConfig& cfg, std::size_t n) : cfg_(cfg) {
    cfg_.validate();
    const std::vector<double> w = simpson_weights(cfg_.m_intervals);
    const double dnu = (cfg_.nu_star - cfg_.nu) / static_cast<double>(cfg_.m_intervals);
    const bool cubic = cfg_.time_order == TimeOrder::order3;
    const std::vector<int> nodes = power_nodes(cubic);
    factors_.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double nu_i = cfg_.nu + static_cast<double>(i) * dnu;
        // Bare Simpson weight of this node; theta is folded in exactly once
        // per sub-step (inside the convection solve, and as the fractional
        // exponent m_i).
        const double w_bare = cfg_.sqrt_v * cfg_.lambda * dnu * w[i] / 3.0;
        const double m_i = w_bare * cfg_.theta;

        const double kappa = convection_kappa(nu_i, w_bare, cfg_.side);
        BandedMatrix d = convection_d1(cfg_.side, n, cfg_.h);
        BandedMatrix conv_lhs, conv_rhs;
        if (cubic) {
            const double zc = kappa * cfg_.theta;
            const BandedMatrix d2 = band_mul(d, d);
            conv_lhs = band_combine(-2.0 * zc / 3.0, d, zc * zc / 6.0, d2);
            conv_lhs.add_scaled_identity(1.0);
            conv_rhs = d;
            conv_rhs.scale(zc / 3.0).add_scaled_identity(1.0);
        } else {
            const double half = kappa * cfg_.theta / 2.0;
            conv_lhs = d;
            conv_lhs.scale(-half).add_scaled_identity(1.0);
            conv_rhs = d;
            conv_rhs.scale(half).add_scaled_identity(1.0);
        }

        VgStepConfig frac;
        frac.side = cfg_.side;
        frac.m_real = m_i;
        frac.nu = nu_i;
        frac.h = cfg_.h;
        frac.interpolation_orders = nodes;

        factors_.push_back(
            Factor{BandedLU(conv_lhs), std::move(conv_rhs), VgMarcher(frac, n)});
    }
}

std::vector<double> InfVarMarcher::step(std::vector<double> c) const {
    for (const Factor& f : factors_) {
        std::vector<double> r = band_matvec(f.conv_rhs, c);
        f.conv_lu.solve_in_place(r);
        c = f.frac.step(std::move(r));
    }
    for (double v : c)
        if (!std::isfinite(v)) throw numeric_error("infvar step: non-finite value produced");
    return c;
}

std::vector<double> InfVarMarcher::march(std::vector<double> c0, std::size_t n_steps) const {
    std::vector<double> c = std::move(c0);
    for (std::size_t k = 0; k < n_steps; ++k) c = step(std::move(c));
    return c;
}

} // namespace ppide
