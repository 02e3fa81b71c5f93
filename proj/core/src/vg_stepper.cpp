#include "ppide/vg_stepper.hpp"
#include "ppide/errors.hpp"
#include "ppide/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace ppide {

namespace {

BandedMatrix build_vg_factor(const VgStepConfig& cfg, std::size_t n) {
    // (I - D1_f/nu) on the positive side, (I + D1_b/nu) on the negative side;
    // both triangular with constant diagonal 1 + 3/(2 h nu).
    BandedMatrix d = cfg.side == JumpSide::positive
                         ? build_forward_d1(n, cfg.h).scale(-1.0 / cfg.nu)
                         : build_backward_d1(n, cfg.h).scale(1.0 / cfg.nu);
    d.add_scaled_identity(1.0);
    return d;
}

} // namespace

void vg_validate(const VgStepConfig& cfg) {
    if (!(cfg.nu > 0.0) || !std::isfinite(cfg.nu))
        throw config_error("vg step: nu must be > 0");
    if (!(cfg.h > 0.0) || !std::isfinite(cfg.h))
        throw config_error("vg step: h must be > 0");
    if (cfg.nu < 1.0 && !(cfg.h < 3.0 / (2.0 * (1.0 - cfg.nu))))
        throw config_error("vg step: for nu < 1 stability requires h < 3/(2(1-nu))");
    if (cfg.interpolation_orders.size() < 2)
        throw config_error("vg step: need at least two interpolation orders");
    if (!std::is_sorted(cfg.interpolation_orders.begin(), cfg.interpolation_orders.end()) ||
        std::adjacent_find(cfg.interpolation_orders.begin(), cfg.interpolation_orders.end()) !=
            cfg.interpolation_orders.end() ||
        cfg.interpolation_orders.front() < 0)
        throw config_error("vg step: interpolation orders must be sorted, distinct, >= 0");
    if (!(cfg.m_real >= 0.0) ||
        !(cfg.m_real < static_cast<double>(cfg.interpolation_orders.back())))
        throw config_error("vg step: m_real must lie in [0, max interpolation order)");
}

double vg_step_eigenvalue(double h, double nu, double m) {
    return std::pow(1.0 + 3.0 / (2.0 * h * nu), -m);
}

std::vector<double> lagrange_weights(const std::vector<int>& nodes, double t) {
    std::vector<double> w(nodes.size(), 1.0);
    for (std::size_t a = 0; a < nodes.size(); ++a)
        for (std::size_t b = 0; b < nodes.size(); ++b)
            if (a != b)
                w[a] *= (t - nodes[b]) / static_cast<double>(nodes[a] - nodes[b]);
    return w;
}

std::vector<double> vg_integer_step(const VgStepConfig& cfg, int m_int,
                                    std::span<const double> c_k) {
    if (m_int < 0) throw config_error("vg_integer_step: m_int must be >= 0");
    VgStepConfig chk = cfg;
    chk.m_real = 0.0; // integer power: only the factor admissibility matters
    vg_validate(chk);
    std::vector<double> c(c_k.begin(), c_k.end());
    if (m_int == 0) return c;
    const BandedLU lu(build_vg_factor(cfg, c.size()));
    for (int k = 0; k < m_int; ++k) lu.solve_in_place(c);
    return c;
}

std::vector<double> vg_step(const VgStepConfig& cfg, std::span<const double> c_k) {
    VgMarcher m(cfg, c_k.size());
    return m.step(std::vector<double>(c_k.begin(), c_k.end()));
}

VgMarcher::VgMarcher(const VgStepConfig& cfg, std::size_t n)
    : cfg_(cfg), factor_(build_vg_factor(cfg, n)), lu_(factor_),
      weights_(lagrange_weights(cfg.interpolation_orders, cfg.m_real)) {
    vg_validate(cfg_);
}

std::vector<double> VgMarcher::step(std::vector<double> c) const {
    // Accumulate sum_a w_a F^{-order_a} c; successive solves reuse the work.
    std::vector<double> out(c.size(), 0.0);
    int power = 0;
    for (std::size_t a = 0; a < weights_.size(); ++a) {
        const int target = cfg_.interpolation_orders[a];
        for (; power < target; ++power) lu_.solve_in_place(c);
        if (weights_[a] != 0.0)
            for (std::size_t i = 0; i < c.size(); ++i) out[i] += weights_[a] * c[i];
    }
    for (double v : out)
        if (!std::isfinite(v)) throw numeric_error("vg step: non-finite value produced");
    return out;
}

std::vector<double> VgMarcher::march(std::vector<double> c0, std::size_t n_steps) const {
    std::vector<double> c = std::move(c0);
    for (std::size_t k = 0; k < n_steps; ++k) c = step(std::move(c));
    return c;
}

} // namespace ppide
