#include "ppide/model.hpp"
#include "ppide/errors.hpp"
#include "ppide/special.hpp"

#include <cmath>
#include <string>

namespace ppide {

void GtspParams::validate() const {
    auto check = [](double v, bool ok, const char* what) {
        if (!ok || !std::isfinite(v))
            throw config_error(std::string("GtspParams: ") + what);
    };
    check(lambda_plus, lambda_plus > 0.0, "lambda_plus must be > 0");
    check(lambda_minus, lambda_minus > 0.0, "lambda_minus must be > 0");
    check(nu_plus, nu_plus > 0.0, "nu_plus must be > 0");
    check(nu_minus, nu_minus > 0.0, "nu_minus must be > 0");
    check(alpha_plus, alpha_plus < 2.0, "alpha_plus must be < 2");
    check(alpha_minus, alpha_minus < 2.0, "alpha_minus must be < 2");
    check(v_r, v_r > 0.0, "v_r must be > 0");
    check(v_l, v_l > 0.0, "v_l must be > 0");
}

SideParams select_side(const GtspParams& p, JumpSide side) {
    if (side == JumpSide::positive)
        return {p.lambda_plus, p.nu_plus, p.alpha_plus, p.v_r};
    return {p.lambda_minus, p.nu_minus, p.alpha_minus, p.v_l};
}

void MarketConfig::validate() const {
    if (!(strike > 0.0) || !std::isfinite(strike))
        throw config_error("MarketConfig: strike must be > 0");
    if (!(vol > 0.0) || !std::isfinite(vol))
        throw config_error("MarketConfig: vol must be > 0");
    if (!(maturity >= 0.0) || !std::isfinite(maturity))
        throw config_error("MarketConfig: maturity must be >= 0");
    if (!std::isfinite(rate)) throw config_error("MarketConfig: rate must be finite");
}

double levy_density(double y, const GtspParams& p) {
    if (y == 0.0) throw numeric_error("levy_density: y must be nonzero");
    if (y > 0.0)
        return p.lambda_plus * std::exp(-p.nu_plus * y) / std::pow(y, 1.0 + p.alpha_plus);
    const double a = -y;
    return p.lambda_minus * std::exp(-p.nu_minus * a) / std::pow(a, 1.0 + p.alpha_minus);
}

double compensator(double lambda, double nu, double alpha) {
    if (!(alpha < 0.0))
        throw numeric_error("compensator: requires alpha < 0 (Gamma(-alpha) pole at 0)");
    return lambda * std::pow(nu, alpha) * gamma_fn(-alpha);
}

namespace {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

} // namespace

double black_scholes_price(double spot, double strike, double rate, double vol,
                           double t, OptionKind kind) {
    if (t <= 0.0 || vol <= 0.0) {
        const double fwd_payoff = kind == OptionKind::put
                                      ? strike * std::exp(-rate * std::max(t, 0.0)) - spot
                                      : spot - strike * std::exp(-rate * std::max(t, 0.0));
        return std::max(fwd_payoff, 0.0);
    }
    const double sq = vol * std::sqrt(t);
    const double d1 = (std::log(spot / strike) + (rate + 0.5 * vol * vol) * t) / sq;
    const double d2 = d1 - sq;
    if (kind == OptionKind::put)
        return strike * std::exp(-rate * t) * norm_cdf(-d2) - spot * norm_cdf(-d1);
    return spot * norm_cdf(d1) - strike * std::exp(-rate * t) * norm_cdf(d2);
}

std::vector<double> terminal_condition(const Grid& g, const MarketConfig& m) {
    std::vector<double> c(g.n_space);
    for (std::size_t i = 0; i < g.n_space; ++i) {
        const double s = std::exp(g.x(i));
        c[i] = black_scholes_price(s, m.strike, m.rate, m.vol, m.maturity, m.option_kind);
    }
    return c;
}

} // namespace ppide
