#include "ppide/pp_stepper.hpp"
#include "ppide/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace ppide {

namespace {

void validate_scheme(const SchemeConfig& cfg) {
    if (!(cfg.theta > 0.0) || !std::isfinite(cfg.theta))
        throw config_error("SchemeConfig: theta must be > 0");
    if (!(cfg.sqrt_v > 0.0) || !std::isfinite(cfg.sqrt_v))
        throw config_error("SchemeConfig: sqrt_v must be > 0");
    if (cfg.compensated && cfg.pade != PadeScheme::cn11)
        throw config_error("SchemeConfig: compensated marching is defined for cn11 only");
}

double signed_rate(const SchemeConfig& cfg) {
    const double b = cfg.sqrt_v / 2.0;
    return cfg.sign == RateSign::growth ? b : -b;
}

using SchemePair = std::pair<BandedMatrix, BandedMatrix>; // {lhs, rhs}

SchemePair build_pair(const BandedMatrix& a, const SchemeConfig& cfg, double comp) {
    validate_scheme(cfg);
    const double bt = signed_rate(cfg) * cfg.theta;
    struct {
        BandedMatrix lhs, rhs;
    } p;
    switch (cfg.pade) {
    case PadeScheme::cn11: {
        const double cl = cfg.compensated ? 1.0 + comp * cfg.theta / 2.0 : 1.0;
        const double cr = cfg.compensated ? 1.0 - comp * cfg.theta / 2.0 : 1.0;
        p.lhs = a;
        p.lhs.scale(cl).add_scaled_identity(-bt / 2.0);
        p.rhs = a;
        p.rhs.scale(cr).add_scaled_identity(bt / 2.0);
        break;
    }
    case PadeScheme::pade12: {
        const BandedMatrix a2 = band_mul(a, a);
        p.lhs = band_combine(1.0, a2, -2.0 * bt / 3.0, a);
        p.lhs.add_scaled_identity(bt * bt / 6.0);
        p.rhs = band_combine(1.0, a2, bt / 3.0, a);
        break;
    }
    case PadeScheme::pade22: {
        const BandedMatrix a2 = band_mul(a, a);
        p.lhs = band_combine(1.0, a2, -bt / 2.0, a);
        p.lhs.add_scaled_identity(bt * bt / 12.0);
        p.rhs = band_combine(1.0, a2, bt / 2.0, a);
        p.rhs.add_scaled_identity(bt * bt / 12.0);
        break;
    }
    }
    // For the triangular tail operators the implicit matrix must keep a
    // positive diagonal ((nu+3/(2h))^{p+1}/(lambda p!) dominates sqrt_v theta/4
    // for any sane step); a sign flip means the step size is absurdly large.
    if (p.lhs.lower_bw() == 0 || p.lhs.upper_bw() == 0) {
        const double* d = p.lhs.band(0);
        for (std::size_t i = 0; i < p.lhs.size(); ++i)
            if (!(d[i] > 0.0))
                throw numeric_error("pp step: implicit matrix lost diagonal positivity "
                                    "(theta too large for this operator)");
    }
    return {std::move(p.lhs), std::move(p.rhs)};
}

void check_finite(const std::vector<double>& c, const char* who) {
    for (double v : c)
        if (!std::isfinite(v)) throw numeric_error(std::string(who) + ": non-finite value produced");
}

std::vector<double> one_step(const BandedMatrix& a, const SchemeConfig& cfg, double comp,
                             std::span<const double> c_k, const char* who) {
    const SchemePair p = build_pair(a, cfg, comp);
    std::vector<double> rhs = band_matvec(p.second, c_k);
    std::vector<double> c = band_lu_solve(p.first, std::move(rhs));
    check_finite(c, who);
    return c;
}

} // namespace

std::vector<double> cn_step(const BandedMatrix& a, const SchemeConfig& cfg,
                            std::span<const double> c_k) {
    SchemeConfig c = cfg;
    c.pade = PadeScheme::cn11;
    c.compensated = false;
    return one_step(a, c, 0.0, c_k, "cn_step");
}

std::vector<double> pade12_step(const BandedMatrix& a, const SchemeConfig& cfg,
                                std::span<const double> c_k) {
    SchemeConfig c = cfg;
    c.pade = PadeScheme::pade12;
    c.compensated = false;
    return one_step(a, c, 0.0, c_k, "pade12_step");
}

std::vector<double> pade22_step(const BandedMatrix& a, const SchemeConfig& cfg,
                                std::span<const double> c_k) {
    SchemeConfig c = cfg;
    c.pade = PadeScheme::pade22;
    c.compensated = false;
    return one_step(a, c, 0.0, c_k, "pade22_step");
}

std::vector<double> cn_step_compensated(const BandedMatrix& a, const SchemeConfig& cfg,
                                        std::span<const double> c_k, double comp) {
    SchemeConfig c = cfg;
    c.pade = PadeScheme::cn11;
    c.compensated = true;
    return one_step(a, c, comp, c_k, "cn_step_compensated");
}

std::vector<double> basic_model_step(const BandedMatrix& a_basic, double alpha,
                                     double lambda, double theta,
                                     std::span<const double> u_k) {
    if (!(alpha > 0.0)) throw config_error("basic_model_step: alpha must be > 0");
    if (!(lambda > 0.0)) throw config_error("basic_model_step: lambda must be > 0");
    if (!(theta > 0.0)) throw config_error("basic_model_step: theta must be > 0");
    const double half = theta * lambda / 2.0;
    BandedMatrix lhs = a_basic;
    lhs.scale(1.0 - half).add_scaled_identity(-half * alpha * alpha);
    BandedMatrix rhs = a_basic;
    rhs.scale(1.0 + half).add_scaled_identity(half * alpha * alpha);
    std::vector<double> r = band_matvec(rhs, u_k);
    std::vector<double> u = band_lu_solve(lhs, std::move(r));
    check_finite(u, "basic_model_step");
    return u;
}

PpMarcher::PpMarcher(std::pair<BandedMatrix, BandedMatrix> pair)
    : lhs_(std::move(pair.first)), rhs_(std::move(pair.second)), lu_(lhs_) {}

PpMarcher::PpMarcher(const BandedMatrix& a, const SchemeConfig& cfg, double comp)
    : PpMarcher(build_pair(a, cfg, comp)) {}

std::vector<double> PpMarcher::step(std::vector<double> c) const {
    std::vector<double> r = band_matvec(rhs_, c);
    lu_.solve_in_place(r);
    check_finite(r, "PpMarcher::step");
    return r;
}

std::vector<double> PpMarcher::march(std::vector<double> c0, std::size_t n_steps) const {
    std::vector<double> c = std::move(c0);
    for (std::size_t k = 0; k < n_steps; ++k) c = step(std::move(c));
    return c;
}

} // namespace ppide
